#pragma once

// Commutative counterparts on the unit circle, with normalized Lebesgue
// measure dθ/2π discretized on N equispaced points.

#include <complex>
#include <span>
#include <vector>

namespace subdiag::classical {

using Complex = std::complex<double>;

class CircleGrid {
 public:
  /// N ≥ 8 and a power of two; throws InvalidGrid otherwise.
  explicit CircleGrid(std::size_t points);

  std::size_t size() const noexcept { return points_; }
  double theta(std::size_t j) const noexcept;

  /// Mean of the samples (trapezoid rule for periodic integrands).
  double mean(std::span<const double> samples) const;

 private:
  std::size_t points_;
};

/// f(z) = Σ_k a_k z^k, evaluated at z = e^{iθ}.
class PolyOnCircle {
 public:
  explicit PolyOnCircle(std::vector<Complex> coefficients);

  /// f(z) = c·Π(1 − a_i z).
  static PolyOnCircle from_factors(Complex leading, std::span<const Complex> roots_reciprocal);

  const std::vector<Complex>& coefficients() const noexcept { return coefficients_; }
  std::size_t degree() const noexcept { return coefficients_.size() - 1; }
  bool is_zero() const noexcept;

  Complex evaluate(Complex z) const noexcept;
  /// Samples on the grid; throws InvalidGrid when degree ≥ N/2.
  std::vector<Complex> sample(const CircleGrid& grid) const;
  /// |f|² on the grid, a weight for szego_ladder.
  std::vector<double> modulus_squared(const CircleGrid& grid) const;

 private:
  std::vector<Complex> coefficients_;
};

/// exp(mean log w). Throws NonpositiveSample if any sample is ≤ 0 or not
/// finite, InvalidGrid if the sample count is not a valid grid size.
double geometric_mean(std::span<const double> w);

struct JensenSides {
  double lhs = 0.0;  // |mean f| = |a_0|
  double rhs = 0.0;  // geometric mean of |f| on the grid
};

/// Throws ZeroPolynomial for f ≡ 0. A sample landing exactly on a zero of
/// f makes rhs = 0.
JensenSides jensen_classical(const PolyOnCircle& f, const CircleGrid& grid);

/// r_d = mean(w·e^{idθ}) for d = 0..max_lag, computed with one FFT.
std::vector<Complex> fourier_coefficients(std::span<const double> w, std::size_t max_lag);

struct LadderRung {
  std::size_t degree = 0;
  double value = 0.0;
  double condition = 0.0;  // of the normal matrix
};

/// value(m) = min over a_1..a_m of mean(|1 + Σ a_k e^{ikθ}|²·w), from the
/// m×m Hermitian Toeplitz normal equations. degrees must be ascending with
/// the largest below N/2. Throws IllConditionedNormalEquations when the
/// normal matrix has condition number above 1e12.
std::vector<LadderRung> szego_ladder(std::span<const double> w, std::span<const std::size_t> degrees);

}  // namespace subdiag::classical
