#include "subdiag/fkdet.hpp"

#include <cmath>
#include <string>

#include "subdiag/error.hpp"

namespace subdiag {

namespace {

void validate_weight(const SubdiagonalAlgebra& alg, const ComplexMatrix& W) {
  alg.require_dim(W, "state density");
  require_square_finite(W, "state density");
  const double scale = W.norm();
  if ((W - W.adjoint()).norm() > 1e-12 * scale) {
    throw Error(ErrorCode::InvalidState, "state density is not Hermitian");
  }
  const ComplexMatrix sym = 0.5 * (W + W.adjoint());
  const double lambda_min = herm_eig(sym).eigenvalues(0);
  if (lambda_min < -1e-12 * spectral_norm(sym)) {
    throw Error(ErrorCode::InvalidState,
                "state density has negative eigenvalue " + std::to_string(lambda_min));
  }
}

}  // namespace

State State::from_density(const SubdiagonalAlgebra& alg, ComplexMatrix W) {
  validate_weight(alg, W);
  const Complex t = alg.trace(W);
  if (std::abs(t - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidState,
                "state density has normalized trace " + std::to_string(t.real()) + ", expected 1");
  }
  return State(0.5 * (W + W.adjoint()));
}

State State::from_weight(const SubdiagonalAlgebra& alg, ComplexMatrix W) {
  validate_weight(alg, W);
  return State(0.5 * (W + W.adjoint()));
}

Complex State::evaluate(const SubdiagonalAlgebra& alg, const ComplexMatrix& X) const {
  return alg.trace(density_ * X);
}

double fk_det(const SubdiagonalAlgebra& alg, const ComplexMatrix& X, double rel_tol_sing) {
  alg.require_dim(X, "fk_det argument");
  require_square_finite(X, "fk_det argument");
  Eigen::BDCSVD<ComplexMatrix> svd(X);
  const RealVector& sigma = svd.singularValues();  // descending
  const double sigma_max = sigma(0);
  if (sigma_max == 0.0 || sigma(sigma.size() - 1) <= rel_tol_sing * sigma_max) return 0.0;
  double log_sum = 0.0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) log_sum += std::log(sigma(i));
  return std::exp(log_sum / static_cast<double>(sigma.size()));
}

double fk_det_state(const SubdiagonalAlgebra& alg, const State& rho, double rel_tol_sing) {
  return fk_det(alg, rho.density(), rel_tol_sing);
}

}  // namespace subdiag
