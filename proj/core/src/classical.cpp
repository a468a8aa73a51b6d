#include "subdiag/classical.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "subdiag/error.hpp"
#include "subdiag/matkernel.hpp"

namespace subdiag::classical {

namespace {

void require_grid_size(std::size_t n) {
  if (n < 8 || !std::has_single_bit(n)) {
    throw Error(ErrorCode::InvalidGrid,
                "grid size must be a power of two >= 8, got " + std::to_string(n));
  }
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

}  // namespace

CircleGrid::CircleGrid(std::size_t points) : points_(points) { require_grid_size(points); }

double CircleGrid::theta(std::size_t j) const noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(points_);
}

double CircleGrid::mean(std::span<const double> samples) const {
  if (samples.size() != points_) {
    throw Error(ErrorCode::DimensionMismatch, "sample count does not match grid");
  }
  double sum = 0.0;
  for (double v : samples) sum += v;
  return sum / static_cast<double>(points_);
}

PolyOnCircle::PolyOnCircle(std::vector<Complex> coefficients) : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) coefficients_.push_back(0.0);
  for (const auto& c : coefficients_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(ErrorCode::ValidationError, "polynomial coefficient is not finite");
    }
  }
}

PolyOnCircle PolyOnCircle::from_factors(Complex leading, std::span<const Complex> roots_reciprocal) {
  std::vector<Complex> c{leading};
  for (const Complex a : roots_reciprocal) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k] += c[k];
      next[k + 1] -= a * c[k];
    }
    c = std::move(next);
  }
  return PolyOnCircle(std::move(c));
}

bool PolyOnCircle::is_zero() const noexcept {
  return std::all_of(coefficients_.begin(), coefficients_.end(), [](Complex c) { return c == 0.0; });
}

Complex PolyOnCircle::evaluate(Complex z) const noexcept {
  Complex acc = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<Complex> PolyOnCircle::sample(const CircleGrid& grid) const {
  if (2 * degree() >= grid.size()) {
    throw Error(ErrorCode::InvalidGrid, "polynomial degree must be below N/2");
  }
  std::vector<Complex> out(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) out[j] = evaluate(std::polar(1.0, grid.theta(j)));
  return out;
}

std::vector<double> PolyOnCircle::modulus_squared(const CircleGrid& grid) const {
  const auto values = sample(grid);
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(), [](Complex v) { return std::norm(v); });
  return out;
}

double geometric_mean(std::span<const double> w) {
  require_grid_size(w.size());
  double log_sum = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (!(w[j] > 0.0) || !std::isfinite(w[j])) {
      throw Error(ErrorCode::NonpositiveSample, "sample " + std::to_string(j) + " is not positive");
    }
    log_sum += std::log(w[j]);
  }
  return std::exp(log_sum / static_cast<double>(w.size()));
}

JensenSides jensen_classical(const PolyOnCircle& f, const CircleGrid& grid) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "f is identically zero");
  const auto values = f.sample(grid);
  JensenSides sides;
  sides.lhs = std::abs(f.coefficients().front());
  double log_sum = 0.0;
  for (const Complex v : values) {
    const double mag = std::abs(v);
    if (mag == 0.0) return {sides.lhs, 0.0};
    log_sum += std::log(mag);
  }
  sides.rhs = std::exp(log_sum / static_cast<double>(values.size()));
  return sides;
}

std::vector<Complex> fourier_coefficients(std::span<const double> w, std::size_t max_lag) {
  require_grid_size(w.size());
  const std::size_t n = w.size();
  if (max_lag > n / 2) {
    throw Error(ErrorCode::InvalidGrid, "max_lag exceeds N/2");
  }
  std::unique_ptr<double, FftwFree> in(static_cast<double*>(fftw_malloc(sizeof(double) * n)));
  std::unique_ptr<fftw_complex, FftwFree> out(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1))));
  fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE);
  std::copy(w.begin(), w.end(), in.get());
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  // FFTW computes Σ_j w_j e^{-2πi jk/N}; the conjugate gives Σ_j w_j e^{+ikθ_j}.
  std::vector<Complex> r(max_lag + 1);
  for (std::size_t d = 0; d <= max_lag; ++d) {
    r[d] = Complex(out.get()[d][0], -out.get()[d][1]) / static_cast<double>(n);
  }
  return r;
}

std::vector<LadderRung> szego_ladder(std::span<const double> w, std::span<const std::size_t> degrees) {
  require_grid_size(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (!(w[j] > 0.0) || !std::isfinite(w[j])) {
      throw Error(ErrorCode::NonpositiveSample, "weight sample " + std::to_string(j) + " is not positive");
    }
  }
  if (!std::is_sorted(degrees.begin(), degrees.end())) {
    throw Error(ErrorCode::ValidationError, "ladder degrees must be ascending");
  }
  const std::size_t max_degree = degrees.empty() ? 0 : degrees.back();
  if (2 * max_degree >= w.size()) {
    throw Error(ErrorCode::InvalidGrid, "ladder degree must be below N/2");
  }
  const auto r = fourier_coefficients(w, max_degree);
  auto lag = [&](long d) { return d >= 0 ? r[static_cast<std::size_t>(d)] : std::conj(r[static_cast<std::size_t>(-d)]); };

  // Q(a) = Σ_{j,k} conj(a_k) R_kj a_j with R_kj = r_{j−k}, a_0 = 1.
  std::vector<LadderRung> rungs;
  for (const std::size_t m : degrees) {
    LadderRung rung;
    rung.degree = m;
    if (m == 0) {
      rung.value = r[0].real();
      rung.condition = 1.0;
      rungs.push_back(rung);
      continue;
    }
    const auto size = static_cast<Eigen::Index>(m);
    ComplexMatrix T(size, size);
    ComplexVector rhs(size);
    for (Eigen::Index k = 0; k < size; ++k) {
      for (Eigen::Index j = 0; j < size; ++j) T(k, j) = lag(static_cast<long>(j - k));
      rhs(k) = -lag(-static_cast<long>(k + 1));
    }
    const RealVector eig = herm_eig(T).eigenvalues;
    rung.condition = eig(size - 1) / eig(0);
    if (!(eig(0) > 0.0) || rung.condition > 1e12) {
      throw Error(ErrorCode::IllConditionedNormalEquations,
                  "Toeplitz normal matrix at degree " + std::to_string(m) + " has condition " +
                      std::to_string(rung.condition));
    }
    // Positive definiteness was just checked through the spectrum.
    const ComplexVector a = Eigen::LLT<ComplexMatrix>(T).solve(rhs);
    // Q at the optimum: R_00 + R_0F·a_F, with R_0j = r_j.
    Complex value = r[0];
    for (Eigen::Index j = 0; j < size; ++j) value += lag(static_cast<long>(j + 1)) * a(j);
    rung.value = value.real();
    rungs.push_back(rung);
  }
  return rungs;
}

}  // namespace subdiag::classical
