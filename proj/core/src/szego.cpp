#include "subdiag/szego.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "subdiag/error.hpp"
#include "subdiag/rng.hpp"

namespace subdiag {

std::string_view to_string(SzegoMethod method) noexcept {
  switch (method) {
    case SzegoMethod::ClosedForm: return "closed_form";
    case SzegoMethod::Alternating: return "alternating";
  }
  return "unknown";
}

void require_pattern_valid(const SubdiagonalAlgebra& alg, const SzegoPoint& p) {
  alg.require_dim(p.D, "Szego point D");
  alg.require_dim(p.A, "Szego point A");
  const auto& s = alg.structure();
  for (Eigen::Index j = 0; j < alg.dim(); ++j) {
    for (Eigen::Index i = 0; i < alg.dim(); ++i) {
      if (!s.same_block(i, j) && p.D(i, j) != 0.0) {
        throw Error(ErrorCode::NotInAlgebra, "Szego point D is not block diagonal");
      }
      if (s.block_of(i) <= s.block_of(j) && p.A(i, j) != 0.0) {
        throw Error(ErrorCode::NotInAlgebra, "Szego point A is not strictly block lower");
      }
    }
  }
}

bool is_feasible(const SubdiagonalAlgebra& alg, const SzegoPoint& p, double tol) {
  return fk_det(alg, p.D) >= 1.0 - tol;
}

double objective(const SubdiagonalAlgebra& alg, const State& rho, const SzegoPoint& p) {
  require_pattern_valid(alg, p);
  const ComplexMatrix B = p.D + p.A;
  const double value = alg.trace(rho.density() * B.adjoint() * B).real();
  return std::max(value, 0.0);
}

double min_trace_objective(const SzegoReport& report) noexcept {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& entry : report.trace) best = std::min(best, entry.objective);
  return best;
}

SzegoReport solve_closed_form(const SubdiagonalAlgebra& alg, const State& rho) {
  alg.require_dim(rho.density(), "state density");
  SzegoReport report;
  report.method = SzegoMethod::ClosedForm;

  ComplexMatrix L;
  try {
    L = cholesky_lower(rho.density());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotPositiveDefinite) throw;
    // Values approach 0 without attainment.
    report.target = 0.0;
    report.infimum_estimate = 0.0;
    report.attained = false;
    return report;
  }

  report.target = fk_det_state(alg, rho);
  const Eigen::Index n = alg.dim();
  const ComplexMatrix L_inv =
      L.triangularView<Eigen::Lower>().solve(ComplexMatrix::Identity(n, n));
  ComplexMatrix B = std::sqrt(report.target) * L_inv;
  B.triangularView<Eigen::StrictlyUpper>().setZero();

  report.point.D = alg.expectation(B);
  report.point.A = B - report.point.D;
  report.infimum_estimate = objective(alg, rho, report.point);
  report.attained = true;
  report.iterations = 0;
  report.trace.push_back({0, report.infimum_estimate, fk_det(alg, report.point.D), 0});
  return report;
}

// Alternating solver.
//
// For block p with row range G and earlier columns F = [0, begin(p)), the
// objective splits over block rows:
//   n·ρ(|D+A|²) = Σ_p [D_p A_p] · W[G∪F] · [D_p A_p]*.
// (i) A-step: for fixed D, A_p = −D_p·W_GF·W_FF⁻¹ is the exact minimizer,
//     leaving the reduced objective (1/n) Σ_p tr(D_p S_p D_p*) with S_p the
//     Schur complement W_GG − W_GF W_FF⁻¹ W_FG.
// (ii) D-step: gradient step on the constraint surface Δ(D) = 1 in the
//     metric ⟨X, Y⟩ = Re Σ_p tr(X_p S_p Y_p*). There the gradient of the
//     reduced objective is D and the constraint normal is N = D^{-*} S⁻¹;
//     the tangential direction is D − βN with β = ⟨D, N⟩/⟨N, N⟩. The step
//     is backtracked until the reduced objective decreases, then
//     D ← D/Δ(D) restores feasibility.
namespace {

struct BlockSystem {
  Eigen::Index begin = 0;
  Eigen::Index size = 0;
  ComplexMatrix coupling;      // K_p = W_GF·W_FF⁻¹ (size × begin)
  ComplexMatrix schur;         // S_p
  ComplexMatrix schur_inverse;
};

std::vector<BlockSystem> build_block_systems(const SubdiagonalAlgebra& alg, const ComplexMatrix& W) {
  std::vector<BlockSystem> systems;
  const auto& s = alg.structure();
  for (int p = 0; p < alg.num_blocks(); ++p) {
    BlockSystem sys;
    sys.begin = s.block_begin(p);
    sys.size = s.block_size(p);
    const auto b = sys.begin;
    const auto m = sys.size;
    const ComplexMatrix W_GG = W.block(b, b, m, m);
    if (b == 0) {
      sys.coupling = ComplexMatrix::Zero(m, 0);
      sys.schur = W_GG;
    } else {
      Eigen::LLT<ComplexMatrix> llt(W.topLeftCorner(b, b));
      if (llt.info() != Eigen::Success) {
        throw Error(ErrorCode::SingularDensity, "leading principal block is not positive definite");
      }
      const ComplexMatrix W_FG = W.block(0, b, b, m);
      const ComplexMatrix solved = llt.solve(W_FG);  // W_FF⁻¹ W_FG
      sys.coupling = solved.adjoint();
      sys.schur = W_GG - W_FG.adjoint() * solved;
    }
    sys.schur = 0.5 * (sys.schur + sys.schur.adjoint());
    Eigen::LLT<ComplexMatrix> schur_llt(sys.schur);
    if (schur_llt.info() != Eigen::Success) {
      throw Error(ErrorCode::SingularDensity, "Schur complement is not positive definite");
    }
    sys.schur_inverse = schur_llt.solve(ComplexMatrix::Identity(m, m));
    systems.push_back(std::move(sys));
  }
  return systems;
}

ComplexMatrix optimal_a(const SubdiagonalAlgebra& alg, const std::vector<BlockSystem>& systems,
                        const ComplexMatrix& D) {
  const Eigen::Index n = alg.dim();
  ComplexMatrix A = ComplexMatrix::Zero(n, n);
  for (const auto& sys : systems) {
    if (sys.begin == 0) continue;
    A.block(sys.begin, 0, sys.size, sys.begin) =
        -D.block(sys.begin, sys.begin, sys.size, sys.size) * sys.coupling;
  }
  return A;
}

double reduced_objective(const std::vector<BlockSystem>& systems, const ComplexMatrix& D, double n) {
  double total = 0.0;
  for (const auto& sys : systems) {
    const auto Dp = D.block(sys.begin, sys.begin, sys.size, sys.size);
    total += (Dp * sys.schur * Dp.adjoint()).trace().real();
  }
  return total / n;
}

/// Normalizes a block-diagonal D to Δ(D) = 1; returns false if D is singular.
bool renormalize(const SubdiagonalAlgebra& alg, ComplexMatrix& D) {
  const double det = fk_det(alg, D);
  if (!(det > 0.0) || !std::isfinite(det)) return false;
  D /= det;
  return true;
}

struct RestartResult {
  SzegoPoint point;
  double value = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
  double max_a_step_increase = -std::numeric_limits<double>::infinity();
};

RestartResult run_restart(const SubdiagonalAlgebra& alg, const State& rho,
                          const std::vector<BlockSystem>& systems, ComplexMatrix D,
                          const SolverConfig& cfg, int restart, std::vector<TraceEntry>& trace) {
  const double n = static_cast<double>(alg.dim());
  RestartResult result;
  if (!renormalize(alg, D)) return result;

  ComplexMatrix A = ComplexMatrix::Zero(alg.dim(), alg.dim());
  auto a_step = [&](const ComplexMatrix& D_new, int iteration) {
    const double before = objective(alg, rho, {D_new, A});
    A = optimal_a(alg, systems, D_new);
    const double after = objective(alg, rho, {D_new, A});
    result.max_a_step_increase =
        std::max(result.max_a_step_increase, (after - before) / std::max(1.0, before));
    trace.push_back({iteration, after, fk_det(alg, D_new), restart});
    return after;
  };

  double current = a_step(D, 0);
  double current_reduced = reduced_objective(systems, D, n);
  for (int it = 1; it <= cfg.max_iters; ++it) {
    ComplexMatrix N = ComplexMatrix::Zero(alg.dim(), alg.dim());
    double dn = 0.0, nn = 0.0;
    for (const auto& sys : systems) {
      const auto Dp = D.block(sys.begin, sys.begin, sys.size, sys.size);
      const ComplexMatrix Np =
          Dp.adjoint().partialPivLu().solve(ComplexMatrix::Identity(sys.size, sys.size)) * sys.schur_inverse;
      N.block(sys.begin, sys.begin, sys.size, sys.size) = Np;
      dn += (Dp * sys.schur * Np.adjoint()).trace().real();
      nn += (Np * sys.schur * Np.adjoint()).trace().real();
    }
    const ComplexMatrix direction = D - (dn / nn) * N;

    double step = 0.5;
    bool accepted = false;
    ComplexMatrix candidate;
    double candidate_reduced = current_reduced;
    for (int halving = 0; halving < 40; ++halving, step *= 0.5) {
      candidate = D - step * direction;
      if (!renormalize(alg, candidate)) continue;
      candidate_reduced = reduced_objective(systems, candidate, n);
      if (candidate_reduced <= current_reduced) {
        accepted = true;
        break;
      }
    }
    result.iterations = it;
    if (!accepted) {
      // No descent along the tangential direction: stationary point.
      result.converged = true;
      break;
    }
    D = candidate;
    const double next = a_step(D, it);
    const double change = std::abs(current - next) / std::max(current, std::numeric_limits<double>::min());
    current = next;
    current_reduced = candidate_reduced;
    if (change < cfg.tol) {
      result.converged = true;
      break;
    }
  }
  result.point = {D, A};
  result.value = current;
  return result;
}

}  // namespace

SzegoReport solve_alternating(const SubdiagonalAlgebra& alg, const State& rho, const SolverConfig& cfg) {
  alg.require_dim(rho.density(), "state density");
  try {
    (void)cholesky_lower(rho.density());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotPositiveDefinite) throw;
    throw Error(ErrorCode::SingularDensity, "density is not positive definite");
  }
  const auto systems = build_block_systems(alg, rho.density());

  SzegoReport report;
  report.method = SzegoMethod::Alternating;
  report.target = fk_det_state(alg, rho);
  report.converged = false;
  report.max_a_step_increase = -std::numeric_limits<double>::infinity();

  const Eigen::Index n = alg.dim();
  const int restarts = std::max(cfg.restarts, 1);
  RestartResult best;
  for (int r = 0; r < restarts; ++r) {
    ComplexMatrix D0 = ComplexMatrix::Identity(n, n);
    if (r > 0) {
      Rng rng = Rng::for_trial(cfg.seed, static_cast<std::uint64_t>(r));
      D0 += random_block_diagonal(rng, alg);
    }
    RestartResult result = run_restart(alg, rho, systems, D0, cfg, r, report.trace);
    report.max_a_step_increase = std::max(report.max_a_step_increase, result.max_a_step_increase);
    if (result.value < best.value) {
      best = std::move(result);
      report.best_restart = r;
    }
  }
  if (!std::isfinite(best.value)) {
    throw Error(ErrorCode::NonConvergence, "every restart started from a singular D");
  }
  report.point = std::move(best.point);
  report.infimum_estimate = best.value;
  report.iterations = best.iterations;
  report.converged = best.converged;
  report.attained = true;
  return report;
}

// Brute-force oracle.
namespace {

struct Coordinates {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> d_entries;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> a_entries;

  std::size_t size() const { return 2 * (d_entries.size() + a_entries.size()); }

  SzegoPoint point(const Eigen::VectorXd& x, Eigen::Index n) const {
    SzegoPoint p{ComplexMatrix::Zero(n, n), ComplexMatrix::Zero(n, n)};
    std::size_t k = 0;
    for (const auto& [i, j] : d_entries) {
      p.D(i, j) = Complex(x(static_cast<Eigen::Index>(2 * k)), x(static_cast<Eigen::Index>(2 * k + 1)));
      ++k;
    }
    for (const auto& [i, j] : a_entries) {
      p.A(i, j) = Complex(x(static_cast<Eigen::Index>(2 * k)), x(static_cast<Eigen::Index>(2 * k + 1)));
      ++k;
    }
    return p;
  }
};

}  // namespace

double brute_force_infimum(const SubdiagonalAlgebra& alg, const State& rho, const BruteForceConfig& cfg) {
  const Eigen::Index n = alg.dim();
  if (n > 3) {
    throw Error(ErrorCode::DimensionTooLarge,
                "brute_force_infimum supports n <= 3, got " + std::to_string(n));
  }
  alg.require_dim(rho.density(), "state density");

  Coordinates coords;
  const auto& s = alg.structure();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (s.same_block(i, j)) coords.d_entries.emplace_back(i, j);
      else if (s.block_of(i) > s.block_of(j)) coords.a_entries.emplace_back(i, j);
    }
  }
  const auto dim = static_cast<Eigen::Index>(coords.size());

  // The objective is quadratic in (D, A) and Δ(D) is 1-homogeneous, so
  // objective/Δ(D)² is the objective at the projected point (D, A)/Δ(D).
  auto value = [&](const Eigen::VectorXd& x) {
    const SzegoPoint p = coords.point(x, n);
    const double det = fk_det(alg, p.D);
    if (!(det > 0.0)) return std::numeric_limits<double>::infinity();
    return objective(alg, rho, p) / (det * det);
  };
  auto project = [&](Eigen::VectorXd& x) {
    const double det = fk_det(alg, coords.point(x, n).D);
    if (det > 0.0) x /= det;
  };
  auto gradient = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd g(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      const double h = 1e-6 * std::max(1.0, std::abs(x(k)));
      Eigen::VectorXd xp = x, xm = x;
      xp(k) += h;
      xm(k) -= h;
      g(k) = (value(xp) - value(xm)) / (2.0 * h);
    }
    return g;
  };

  double best = std::numeric_limits<double>::infinity();
  for (int start = 0; start < std::max(cfg.starts, 1); ++start) {
    Rng rng = Rng::for_trial(cfg.seed, static_cast<std::uint64_t>(start));
    Eigen::VectorXd x(dim);
    std::size_t k = 0;
    for (const auto& [i, j] : coords.d_entries) {
      const double base = (i == j) ? 1.0 : 0.0;
      x(static_cast<Eigen::Index>(2 * k)) = base + 0.5 * rng.normal();
      x(static_cast<Eigen::Index>(2 * k + 1)) = 0.5 * rng.normal();
      ++k;
    }
    for (std::size_t a = 0; a < coords.a_entries.size(); ++a, ++k) {
      x(static_cast<Eigen::Index>(2 * k)) = 0.5 * rng.normal();
      x(static_cast<Eigen::Index>(2 * k + 1)) = 0.5 * rng.normal();
    }
    project(x);
    double fx = value(x);
    if (!std::isfinite(fx)) continue;

    Eigen::VectorXd g = gradient(x);
    double step = 1e-2;
    for (int it = 0; it < cfg.max_iters; ++it) {
      const double gg = g.squaredNorm();
      if (gg < 1e-28) break;
      // Armijo backtracking from the current trial step.
      Eigen::VectorXd x_new;
      double f_new = fx;
      bool accepted = false;
      for (int tries = 0; tries < 60; ++tries) {
        x_new = x - step * g;
        project(x_new);
        f_new = value(x_new);
        if (f_new <= fx - 1e-4 * step * gg) {
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;
      const Eigen::VectorXd g_new = gradient(x_new);
      // Barzilai–Borwein step for the next iteration.
      const Eigen::VectorXd sx = x_new - x;
      const Eigen::VectorXd sg = g_new - g;
      const double sy = sx.dot(sg);
      step = sy > 0.0 ? std::clamp(sx.squaredNorm() / sy, 1e-8, 1e3) : std::min(step * 2.0, 1e3);
      const double improvement = (fx - f_new) / std::max(1.0, std::abs(fx));
      x = x_new;
      fx = f_new;
      g = g_new;
      if (improvement < cfg.tol) break;
    }
    best = std::min(best, fx);
  }
  return best;
}

}  // namespace subdiag
