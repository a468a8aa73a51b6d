#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "subdiag/error.hpp"
#include "subdiag/fkdet.hpp"
#include "subdiag/rng.hpp"

using namespace subdiag;

namespace {

ComplexMatrix diag(std::initializer_list<double> values) {
  const auto n = static_cast<Eigen::Index>(values.size());
  ComplexMatrix D = ComplexMatrix::Zero(n, n);
  Eigen::Index i = 0;
  for (double v : values) D(i, i) = v, ++i;
  return D;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("fk_det examples") {
  const auto alg = make_algebra({1, 1});
  CHECK(fk_det(alg, ComplexMatrix::Identity(2, 2)) == doctest::Approx(1.0));
  CHECK(fk_det(alg, diag({1, 4})) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(fk_det(alg, diag({0, 1})) == 0.0);
  CHECK(fk_det(alg, ComplexMatrix::Zero(2, 2)) == 0.0);

  const auto alg4 = make_algebra({4});
  Rng rng(44);
  const ComplexMatrix X = random_gaussian_matrix(rng, 4);
  CHECK(rel(fk_det(alg4, X), oracle::det_root(X)) <= 1e-10);
}

TEST_CASE("fk_det rejects wrong dimensions") {
  const auto alg = make_algebra({1, 1});
  CHECK_THROWS_AS(fk_det(alg, ComplexMatrix::Identity(3, 3)), Error);
}

TEST_CASE("fk_det singular threshold is relative") {
  const auto alg = make_algebra({1, 1});
  CHECK(fk_det(alg, diag({1e-13, 1.0})) == 0.0);
  CHECK(fk_det(alg, diag({1e-11, 1.0})) == doctest::Approx(std::sqrt(1e-11)));
  CHECK(fk_det(alg, diag({1e-20, 1e-20})) == doctest::Approx(1e-20));
}

TEST_CASE("fk_det matches the log-sum formula through abs_op") {
  // exp τ(log|X|) with log|X| taken from the spectral decomposition of |X|.
  const auto alg = make_algebra({3});
  Rng rng(12);
  const ComplexMatrix X = random_gaussian_matrix(rng, 3);
  const auto eig = herm_eig(abs_op(X));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < 3; ++i) acc += std::log(eig.eigenvalues(i));
  CHECK(rel(fk_det(alg, X), std::exp(acc / 3.0)) <= 1e-10);
}

TEST_CASE("fk_det_state examples") {
  const auto alg = make_algebra({1, 1});
  CHECK(fk_det_state(alg, State::from_density(alg, ComplexMatrix::Identity(2, 2))) == doctest::Approx(1.0));
  CHECK(fk_det_state(alg, State::from_density(alg, diag({0.4, 1.6}))) ==
        doctest::Approx(std::sqrt(0.4 * 1.6)).epsilon(1e-14));
  CHECK(fk_det_state(alg, State::from_density(alg, diag({0.0, 2.0}))) == 0.0);
}

TEST_CASE("State validation") {
  const auto alg = make_algebra({1, 1});
  CHECK_THROWS_AS(State::from_density(alg, diag({1.0, 2.0})), Error);  // τ ≠ 1
  CHECK_THROWS_AS(State::from_density(alg, diag({-0.5, 2.5})), Error);  // not psd
  ComplexMatrix nonherm = ComplexMatrix::Identity(2, 2);
  nonherm(0, 1) = 0.3;
  CHECK_THROWS_AS(State::from_density(alg, nonherm), Error);
  CHECK_NOTHROW(State::from_weight(alg, diag({1.0, 2.0})));
  const State rho = State::from_density(alg, diag({0.4, 1.6}));
  CHECK(rho.evaluate(alg, ComplexMatrix::Identity(2, 2)).real() == doctest::Approx(1.0));
}

TEST_CASE("determinant properties on random instances") {
  double worst_mult = 0.0, worst_unitary = 0.0, worst_homog = 0.0, worst_tri = 0.0;
  for (int t = 0; t < 1000; ++t) {
    Rng rng = Rng::for_trial(31, t);
    const int n = 1 + t % 8;
    const auto alg = make_algebra(random_partition(rng, n));
    const ComplexMatrix X = random_gaussian_matrix(rng, n) + ComplexMatrix::Identity(n, n);
    const ComplexMatrix Y = random_gaussian_matrix(rng, n) + ComplexMatrix::Identity(n, n);
    const double dx = fk_det(alg, X), dy = fk_det(alg, Y);
    worst_mult = std::max(worst_mult, std::abs(fk_det(alg, X * Y) - dx * dy) / (dx * dy));

    const ComplexMatrix U = random_unitary(rng, n), V = random_unitary(rng, n);
    worst_unitary = std::max(worst_unitary, rel(fk_det(alg, U * X * V), dx));

    const Complex s = rng.complex_normal() * 3.0;
    worst_homog = std::max(worst_homog, rel(fk_det(alg, s * X), std::abs(s) * dx));

    const ComplexMatrix A = random_algebra_element(rng, alg);
    const double da = fk_det(alg, A);
    worst_tri = std::max(worst_tri, std::abs(da - fk_det(alg, alg.expectation(A))) / std::max(da, 1e-300));

    // Independent oracle: LU determinant root.
    REQUIRE(rel(dx, oracle::det_root_log(X)) <= 1e-10);
  }
  CHECK(worst_mult <= 1e-10);
  CHECK(worst_unitary <= 1e-10);
  CHECK(worst_homog <= 1e-12);
  CHECK(worst_tri <= 1e-10);
}
