#pragma once

#include "subdiag/algebra.hpp"
#include "subdiag/matkernel.hpp"

namespace subdiag {

/// A positive linear functional ρ(X) = τ(W·X) given by its τ-density W.
///
/// from_density() demands a state (τ(W) = 1); from_weight() admits any
/// positive functional, which the scaling checks rely on.
class State {
 public:
  static State from_density(const SubdiagonalAlgebra& alg, ComplexMatrix W);
  static State from_weight(const SubdiagonalAlgebra& alg, ComplexMatrix W);

  const ComplexMatrix& density() const noexcept { return density_; }
  /// ρ(X) = τ(W·X).
  Complex evaluate(const SubdiagonalAlgebra& alg, const ComplexMatrix& X) const;

 private:
  explicit State(ComplexMatrix W) : density_(std::move(W)) {}
  ComplexMatrix density_;
};

/// Default singularity threshold: σ ≤ 1e-12·σ_max counts as zero.
inline constexpr double kDefaultSingularTolerance = 1e-12;

/// Δ(X) = exp τ(log|X|) = exp((1/n) Σ log σ_i), and 0 when the smallest
/// singular value is at most rel_tol_sing·σ_max.
double fk_det(const SubdiagonalAlgebra& alg, const ComplexMatrix& X,
              double rel_tol_sing = kDefaultSingularTolerance);

/// Δ(ρ) := Δ(W) for the τ-density W of ρ.
double fk_det_state(const SubdiagonalAlgebra& alg, const State& rho,
                    double rel_tol_sing = kDefaultSingularTolerance);

}  // namespace subdiag
