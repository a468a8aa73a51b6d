#include "subdiag/factor.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "subdiag/error.hpp"
#include "subdiag/fkdet.hpp"

namespace subdiag {

ComplexMatrix factorize_positive(const SubdiagonalAlgebra& alg, const ComplexMatrix& X) {
  alg.require_dim(X, "factorize_positive argument");
  require_square_finite(X, "factorize_positive argument");
  if (!is_hermitian(X)) {
    throw Error(ErrorCode::NotPositiveDefinite, "factorize_positive: argument is not Hermitian");
  }
  const RealVector eig = herm_eig(X).eigenvalues;
  const double lo = eig(0);
  const double hi = eig(eig.size() - 1);
  if (!(lo > 0.0) || hi / lo > kMaxFactorCondition) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "factorize_positive: eigenvalue range [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "] is not invertible positive within condition 1e12");
  }
  return reverse_cholesky(X);
}

FactorizationReport verify_factorization(const SubdiagonalAlgebra& alg, const ComplexMatrix& X,
                                         const ComplexMatrix& A, double tol) {
  alg.require_dim(X, "verify_factorization X");
  alg.require_dim(A, "verify_factorization A");
  FactorizationReport report;
  report.tolerance = tol;

  const double x_norm = X.norm();
  report.reconstruction_residual = (A.adjoint() * A - X).norm() / (x_norm > 0.0 ? x_norm : 1.0);
  report.factor_in_algebra = alg.membership(A, 0.0);
  if (report.factor_in_algebra) {
    try {
      report.inverse_in_algebra = alg.membership(alg.algebra_inverse(A), 0.0);
    } catch (const Error&) {
      report.inverse_in_algebra = false;
    }
  }

  const double det_x = fk_det(alg, X);
  const double det_a = fk_det(alg, A);
  report.determinant_residual = det_x > 0.0 ? std::abs(det_x - det_a * det_a) / det_x
                                            : std::numeric_limits<double>::infinity();

  report.pass = report.reconstruction_residual <= tol && report.factor_in_algebra &&
                report.inverse_in_algebra && report.determinant_residual <= tol;
  return report;
}

}  // namespace subdiag
