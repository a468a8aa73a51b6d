#pragma once

#include "subdiag/algebra.hpp"
#include "subdiag/matkernel.hpp"

namespace subdiag {

/// Condition numbers above this are rejected by factorize_positive.
inline constexpr double kMaxFactorCondition = 1e12;

/// Writes an invertible positive X as A*·A with A lower triangular,
/// positive diagonal, so A and A⁻¹ lie in 𝒜 for every block partition.
///
/// Throws NotPositiveDefinite for non-Hermitian, indefinite, or
/// near-singular (cond > 1e12) input.
ComplexMatrix factorize_positive(const SubdiagonalAlgebra& alg, const ComplexMatrix& X);

struct FactorizationReport {
  double reconstruction_residual = 0.0;  // ‖A*A − X‖_F / ‖X‖_F
  bool factor_in_algebra = false;        // exact pattern zeros
  bool inverse_in_algebra = false;       // exact pattern zeros; false if A is singular
  double determinant_residual = 0.0;     // |Δ(X) − Δ(A)²| / Δ(X)
  double tolerance = 0.0;
  bool pass = false;
};

FactorizationReport verify_factorization(const SubdiagonalAlgebra& alg, const ComplexMatrix& X,
                                         const ComplexMatrix& A, double tol = 1e-10);

}  // namespace subdiag
