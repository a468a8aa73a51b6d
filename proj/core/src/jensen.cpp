#include "subdiag/jensen.hpp"

#include <algorithm>
#include <cmath>

#include "subdiag/error.hpp"
#include "subdiag/fkdet.hpp"
#include "subdiag/rng.hpp"

namespace subdiag {

namespace {

constexpr double kMembershipTol = 1e-12;

void require_member(const SubdiagonalAlgebra& alg, const ComplexMatrix& A, const char* what) {
  alg.require_dim(A, what);
  if (!alg.membership(A, kMembershipTol)) {
    throw Error(ErrorCode::NotInAlgebra, std::string(what) + " is not in the algebra");
  }
}

}  // namespace

JensenGap jensen_gap(const SubdiagonalAlgebra& alg, const ComplexMatrix& A) {
  require_member(alg, A, "jensen_gap argument");
  JensenGap g;
  g.det_a = fk_det(alg, A);
  g.det_phi = fk_det(alg, alg.expectation(A));
  g.gap = g.det_a - g.det_phi;
  return g;
}

double jensen_formula_check(const SubdiagonalAlgebra& alg, const ComplexMatrix& A) {
  require_member(alg, A, "jensen_formula_check argument");
  const ComplexMatrix member = alg.project_to_pattern(A);
  const ComplexMatrix inverse = alg.algebra_inverse(member);  // throws if singular
  if (!alg.membership(inverse, kMembershipTol)) {
    throw Error(ErrorCode::NotInvertibleInAlgebra, "inverse is not in the algebra");
  }
  const double det_a = fk_det(alg, A);
  if (!(det_a > 0.0)) {
    throw Error(ErrorCode::NotInvertibleInAlgebra, "argument is singular to working precision");
  }
  return std::abs(fk_det(alg, alg.expectation(A)) - det_a) / det_a;
}

double algebra_spectral_radius(const SubdiagonalAlgebra& alg, const ComplexMatrix& A) {
  alg.require_dim(A, "spectral radius argument");
  double radius = 0.0;
  const auto& s = alg.structure();
  for (int p = 0; p < alg.num_blocks(); ++p) {
    const auto b = s.block_begin(p);
    const auto size = s.block_size(p);
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(A.block(b, b, size, size), false);
    radius = std::max(radius, solver.eigenvalues().cwiseAbs().maxCoeff());
  }
  return radius;
}

JensenReport jensen_suite(const SubdiagonalAlgebra& alg, int trials, std::uint64_t seed, double tol) {
  JensenReport report;
  report.tolerance = tol;
  report.trials = std::max(trials, 1);
  const Eigen::Index n = alg.dim();

  auto record_inequality = [&](const JensenGap& g) {
    const double scale = std::max(1.0, g.det_a);
    report.worst_gap = std::min(report.worst_gap, g.gap / scale);
    report.worst_equality_residual = std::max(report.worst_equality_residual, std::abs(g.gap) / scale);
    return g.gap / scale >= -tol;
  };

  for (int t = 0; t < report.trials; ++t) {
    Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(t));
    ComplexMatrix A = random_algebra_element(rng, alg);
    if (t % 10 == 9) {
      A.col(0).setZero();
      ++report.singular_samples;
    }
    record_inequality(jensen_gap(alg, A));

    if (t % 10 == 9) continue;
    const double shift = 2.0 * std::max(algebra_spectral_radius(alg, A), 0.5);
    const ComplexMatrix invertible = A + shift * ComplexMatrix::Identity(n, n);
    const bool inequality_ok = record_inequality(jensen_gap(alg, invertible));
    double residual = 0.0;
    try {
      residual = jensen_formula_check(alg, invertible);
    } catch (const Error&) {
      continue;  // not invertible in 𝒜 at working precision; outside the formula's domain
    }
    ++report.invertible_samples;
    report.worst_formula_residual = std::max(report.worst_formula_residual, residual);
    if (inequality_ok && residual > tol) ++report.implication_violations;
  }

  report.inequality_pass = report.worst_gap >= -tol;
  report.equality_pass = report.worst_equality_residual <= tol;
  report.formula_pass = report.worst_formula_residual <= tol;
  report.pass = report.inequality_pass && report.equality_pass && report.formula_pass &&
                report.implication_violations == 0;
  return report;
}

}  // namespace subdiag
