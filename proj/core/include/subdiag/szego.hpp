#pragma once

// Variational problem inf ρ(|D+A|²) over block-diagonal D with Δ(D) ≥ 1
// and A ∈ 𝒜 with φ(A) = 0, together with its target value Δ(ρ).

#include <cstdint>
#include <string_view>
#include <vector>

#include "subdiag/algebra.hpp"
#include "subdiag/fkdet.hpp"

namespace subdiag {

struct SzegoPoint {
  ComplexMatrix D;  // block diagonal
  ComplexMatrix A;  // strictly block lower: φ(A) = 0
};

struct TraceEntry {
  int iteration = 0;
  double objective = 0.0;
  double det_d = 0.0;  // Δ(D) of the evaluated point
  int restart = 0;
};

enum class SzegoMethod { ClosedForm, Alternating };

std::string_view to_string(SzegoMethod method) noexcept;

struct SzegoReport {
  double infimum_estimate = 0.0;
  double target = 0.0;  // Δ(ρ)
  SzegoPoint point;     // empty (0×0) when the infimum is not attained
  std::vector<TraceEntry> trace;
  bool attained = false;
  bool converged = true;
  SzegoMethod method = SzegoMethod::ClosedForm;
  int iterations = 0;
  int best_restart = 0;
  /// Largest relative objective increase observed across an exact A-step
  /// (≤ 0 up to rounding when the A-steps are monotone).
  double max_a_step_increase = 0.0;
};

struct SolverConfig {
  int max_iters = 500;
  double tol = 1e-8;
  int restarts = 8;
  std::uint64_t seed = 0;
};

struct BruteForceConfig {
  int starts = 8;
  int max_iters = 4000;
  double tol = 1e-12;
  std::uint64_t seed = 0;
};

/// Feasibility tolerance on Δ(D) ≥ 1.
inline constexpr double kFeasibilityTol = 1e-8;

/// Throws DimensionMismatch on size errors and NotInAlgebra when D is not
/// block diagonal or φ(A) ≠ 0.
void require_pattern_valid(const SubdiagonalAlgebra& alg, const SzegoPoint& p);

bool is_feasible(const SubdiagonalAlgebra& alg, const SzegoPoint& p, double tol = kFeasibilityTol);

/// ρ(|D+A|²) = τ(W·(D+A)*·(D+A)).
double objective(const SubdiagonalAlgebra& alg, const State& rho, const SzegoPoint& p);

/// Explicit minimizer. With W = L·L* (lower Cholesky),
/// B = Δ(W)^{1/2}·L⁻¹ is lower triangular, D = φ(B), A = B − D; then
/// Δ(D) = 1 and ρ(|B|²) = Δ(W). Singular W yields target 0, not attained,
/// empty point.
SzegoReport solve_closed_form(const SubdiagonalAlgebra& alg, const State& rho);

/// Alternating minimization; see the implementation notes in szego.cpp.
/// Throws SingularDensity when W is not positive definite. On hitting
/// max_iters the report is still returned with converged = false.
SzegoReport solve_alternating(const SubdiagonalAlgebra& alg, const State& rho,
                              const SolverConfig& cfg = {});

/// Independent oracle for n ≤ 3: multi-start descent on the real
/// coordinates of (D, A) with finite-difference gradients, projecting onto
/// Δ(D) = 1 after every step. Throws DimensionTooLarge for n > 3.
double brute_force_infimum(const SubdiagonalAlgebra& alg, const State& rho,
                           const BruteForceConfig& cfg = {});

/// Smallest objective recorded in the trace, +inf when empty.
double min_trace_objective(const SzegoReport& report) noexcept;

}  // namespace subdiag
