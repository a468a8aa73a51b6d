#pragma once

#include <cstdint>

#include "subdiag/algebra.hpp"

namespace subdiag {

struct JensenGap {
  double det_a = 0.0;    // Δ(A)
  double det_phi = 0.0;  // Δ(φ(A))
  double gap = 0.0;      // Δ(A) − Δ(φ(A))
};

/// Throws NotInAlgebra unless A is in 𝒜 (relative tolerance 1e-12).
JensenGap jensen_gap(const SubdiagonalAlgebra& alg, const ComplexMatrix& A);

/// |Δ(φ(A)) − Δ(A)| / Δ(A) for A ∈ 𝒜 ∩ 𝒜⁻¹.
///
/// Throws NotInAlgebra, or NotInvertibleInAlgebra when A is singular, badly
/// conditioned, or has an inverse outside 𝒜.
double jensen_formula_check(const SubdiagonalAlgebra& alg, const ComplexMatrix& A);

struct JensenReport {
  int trials = 0;
  int invertible_samples = 0;
  int singular_samples = 0;
  /// Most negative normalized gap (Δ(A) − Δ(φ(A)))/max(1, Δ(A)). The
  /// inequality requires ≥ −tol.
  double worst_gap = 0.0;
  /// Largest |Δ(A) − Δ(φ(A))|/max(1, Δ(A)); zero for block-triangular A.
  double worst_equality_residual = 0.0;
  /// Largest jensen_formula_check over the invertible samples.
  double worst_formula_residual = 0.0;
  /// Samples passing the inequality yet failing the formula.
  int implication_violations = 0;
  double tolerance = 0.0;
  bool inequality_pass = false;
  bool equality_pass = false;
  bool formula_pass = false;
  bool pass = false;
};

/// Per trial: a Gaussian element of 𝒜 (every tenth with a zeroed column in
/// its first diagonal block, so the singular convention is exercised), and
/// the same element shifted by c·I with c twice its spectral radius, which
/// lies in 𝒜 ∩ 𝒜⁻¹.
JensenReport jensen_suite(const SubdiagonalAlgebra& alg, int trials, std::uint64_t seed,
                          double tol = 1e-10);

/// Largest |λ| over the spectrum of A ∈ 𝒜, read off the diagonal blocks.
double algebra_spectral_radius(const SubdiagonalAlgebra& alg, const ComplexMatrix& A);

}  // namespace subdiag
