#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "oracles.hpp"
#include "subdiag/classical.hpp"
#include "subdiag/error.hpp"
#include "subdiag/rng.hpp"
#include "subdiag/szego.hpp"

using namespace subdiag;
using namespace subdiag::classical;

namespace {

std::vector<double> sample(const CircleGrid& grid, auto&& fn) {
  std::vector<double> w(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) w[j] = fn(grid.theta(j));
  return w;
}

/// exp of a random real trigonometric polynomial of degree 3: smooth,
/// bounded away from 0 and ∞.
std::vector<double> log_smooth_weight(Rng& rng, const CircleGrid& grid) {
  double c[4], s[4];
  for (int k = 0; k < 4; ++k) {
    c[k] = 0.3 * rng.normal();
    s[k] = 0.3 * rng.normal();
  }
  return sample(grid, [&](double th) {
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) acc += c[k] * std::cos(k * th) + s[k] * std::sin(k * th);
    return std::exp(acc);
  });
}

std::vector<std::size_t> degrees_upto(std::size_t m) {
  std::vector<std::size_t> d(m + 1);
  std::iota(d.begin(), d.end(), 0);
  return d;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ValidationError;
}

}  // namespace

TEST_CASE("CircleGrid validation") {
  CHECK_NOTHROW(CircleGrid(8));
  CHECK(code_of([] { CircleGrid(4); }) == ErrorCode::InvalidGrid);
  CHECK(code_of([] { CircleGrid(12); }) == ErrorCode::InvalidGrid);
  const CircleGrid g(8);
  CHECK(g.theta(2) == doctest::Approx(std::numbers::pi / 2));
}

TEST_CASE("geometric_mean examples") {
  const CircleGrid grid(4096);
  const std::vector<double> constant(4096, 2.5);
  CHECK(geometric_mean(constant) == doctest::Approx(2.5).epsilon(1e-14));

  const auto w1 = PolyOnCircle({1.0, -0.5}).modulus_squared(grid);
  CHECK(std::abs(geometric_mean(w1) - 1.0) <= 1e-6);

  const auto w2 = PolyOnCircle({-2.0, 1.0}).modulus_squared(grid);  // |e^{iθ} − 2|²
  CHECK(std::abs(geometric_mean(w2) - 4.0) <= 1e-6);

  std::vector<double> bad(4096, 1.0);
  bad[17] = 0.0;
  CHECK(code_of([&] { geometric_mean(bad); }) == ErrorCode::NonpositiveSample);
  bad[17] = -1.0;
  CHECK(code_of([&] { geometric_mean(bad); }) == ErrorCode::NonpositiveSample);
}

TEST_CASE("jensen_classical examples") {
  const CircleGrid grid(4096);
  const auto one = jensen_classical(PolyOnCircle({1.0}), grid);
  CHECK(one.lhs == 1.0);
  CHECK(one.rhs == doctest::Approx(1.0));

  const auto z = jensen_classical(PolyOnCircle({0.0, 1.0}), grid);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == doctest::Approx(1.0));

  // f(z) = z − 0.5: mean of log|e^{iθ} − 0.5| is 0.
  const auto shifted = jensen_classical(PolyOnCircle({-0.5, 1.0}), grid);
  CHECK(std::abs(shifted.lhs - 0.5) <= 1e-15);
  CHECK(std::abs(shifted.rhs - 1.0) <= 1e-6);

  CHECK(code_of([&] { jensen_classical(PolyOnCircle({0.0, 0.0}), grid); }) == ErrorCode::ZeroPolynomial);
  CHECK(code_of([&] { jensen_classical(PolyOnCircle(std::vector<Complex>(5, 1.0)), CircleGrid(8)); }) ==
        ErrorCode::InvalidGrid);
}

TEST_CASE("classical Jensen on random polynomials, and equality for zero-free ones") {
  const CircleGrid grid(4096);
  for (int t = 0; t < 1000; ++t) {
    Rng rng = Rng::for_trial(5, t);
    const int degree = rng.uniform_int(0, 8);
    std::vector<Complex> coeffs(static_cast<std::size_t>(degree) + 1);
    for (auto& c : coeffs) c = rng.complex_normal();
    const auto sides = jensen_classical(PolyOnCircle(coeffs), grid);
    REQUIRE(sides.lhs <= sides.rhs + 1e-8);

    std::vector<Complex> inv_roots(static_cast<std::size_t>(degree));
    for (auto& a : inv_roots) a = std::polar(0.95 * rng.uniform(), 2.0 * std::numbers::pi * rng.uniform());
    const Complex leading = rng.complex_normal();
    const auto eq = jensen_classical(PolyOnCircle::from_factors(leading, inv_roots), grid);
    REQUIRE(std::abs(eq.lhs - eq.rhs) <= 1e-6);
    REQUIRE(std::abs(eq.lhs - std::abs(leading)) <= 1e-12);
  }
}

TEST_CASE("FFT Fourier coefficients match the direct sum") {
  const CircleGrid grid(256);
  Rng rng(2);
  const auto w = log_smooth_weight(rng, grid);
  const auto fast = fourier_coefficients(w, 20);
  const auto slow = oracle::direct_fourier(w, 20);
  for (std::size_t d = 0; d <= 20; ++d) CHECK(std::abs(fast[d] - slow[d]) <= 1e-13);
}

TEST_CASE("szego_ladder: constant weight") {
  const std::vector<double> w(512, 3.0);
  const auto degrees = degrees_upto(10);
  for (const auto& rung : szego_ladder(w, degrees)) CHECK(rung.value == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("szego_ladder matches the Toeplitz determinant-ratio oracle") {
  const CircleGrid grid(1024);
  Rng rng(8);
  const auto w = log_smooth_weight(rng, grid);
  const auto r = oracle::direct_fourier(w, 12);
  const auto rungs = szego_ladder(w, degrees_upto(12));
  for (const auto& rung : rungs) {
    CHECK(std::abs(rung.value - oracle::toeplitz_prediction_error(r, rung.degree)) <= 1e-10);
  }
}

TEST_CASE("szego_ladder: |1 − 0.5e^{iθ}|² converges to 1") {
  const CircleGrid grid(4096);
  const auto w = PolyOnCircle({1.0, -0.5}).modulus_squared(grid);
  const std::vector<std::size_t> degrees{1, 10, 40};
  const auto rungs = szego_ladder(w, degrees);
  CHECK(std::abs(rungs[2].value - 1.0) <= 1e-3);
  // Degree 0 is the arithmetic mean 1 + 0.25.
  const auto zero = szego_ladder(w, std::vector<std::size_t>{0});
  CHECK(zero[0].value == doctest::Approx(1.25));
}

TEST_CASE("szego_ladder monotone, bounded below, convergent for log-smooth weights") {
  const CircleGrid grid(4096);
  for (int t = 0; t < 20; ++t) {
    Rng rng = Rng::for_trial(404, t);
    const auto w = log_smooth_weight(rng, grid);
    const double gm = geometric_mean(w);
    const auto rungs = szego_ladder(w, degrees_upto(64));
    for (std::size_t k = 1; k < rungs.size(); ++k) {
      REQUIRE(rungs[k].value <= rungs[k - 1].value + 1e-12);
    }
    for (const auto& rung : rungs) REQUIRE(rung.value >= gm - 1e-6);
    CHECK(std::abs(rungs.back().value - gm) <= 1e-3);
  }
}

TEST_CASE("szego_ladder errors") {
  const CircleGrid grid(1024);
  // Eighth-order zero at θ = 0: the condition number grows like m^8 and
  // passes 1e12 well before degree 200.
  const auto w = sample(grid, [](double th) { return std::pow(1.0 - std::cos(th), 4) + 1e-30; });
  CHECK(code_of([&] { szego_ladder(w, std::vector<std::size_t>{200}); }) == ErrorCode::IllConditionedNormalEquations);

  const std::vector<double> ok(64, 1.0);
  CHECK(code_of([&] { szego_ladder(ok, std::vector<std::size_t>{32}); }) == ErrorCode::InvalidGrid);
  CHECK(code_of([&] { szego_ladder(ok, std::vector<std::size_t>{3, 1}); }) == ErrorCode::ValidationError);
  std::vector<double> neg(64, 1.0);
  neg[3] = -1.0;
  CHECK(code_of([&] { szego_ladder(neg, std::vector<std::size_t>{1}); }) == ErrorCode::NonpositiveSample);
}

TEST_CASE("circle and matrix pictures agree on diagonal data") {
  for (std::size_t n : {8u, 16u, 32u}) {
    const CircleGrid grid(n);
    Rng rng(n);
    const auto w = log_smooth_weight(rng, grid);
    const double mean = grid.mean(w);

    const auto alg = make_algebra(std::vector<int>(n, 1));
    ComplexMatrix W = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) W(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = w[j] / mean;
    const State rho = State::from_density(alg, W);
    const double expected = geometric_mean(w) / mean;
    CHECK(std::abs(fk_det_state(alg, rho) - expected) <= 1e-10);
    CHECK(std::abs(solve_closed_form(alg, rho).infimum_estimate - expected) <= 1e-10);
  }
}
