#include "subdiag/matkernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "subdiag/error.hpp"

namespace subdiag {

namespace {

void require_hermitian(const ComplexMatrix& H, const char* what) {
  require_square_finite(H, what);
  if (!is_hermitian(H)) {
    throw Error(ErrorCode::NotHermitian, std::string(what) + " is not Hermitian");
  }
}

}  // namespace

bool is_finite(const ComplexMatrix& X) noexcept {
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      if (!std::isfinite(X(i, j).real()) || !std::isfinite(X(i, j).imag())) return false;
    }
  }
  return true;
}

void require_square_finite(const ComplexMatrix& X, const char* what) {
  if (X.rows() != X.cols() || X.rows() == 0) {
    throw Error(ErrorCode::InvalidMatrix,
                std::string(what) + " must be square and nonempty, got " +
                    std::to_string(X.rows()) + "x" + std::to_string(X.cols()));
  }
  if (!is_finite(X)) {
    throw Error(ErrorCode::InvalidMatrix, std::string(what) + " has non-finite entries");
  }
}

bool is_hermitian(const ComplexMatrix& X, double rel_tol) noexcept {
  if (X.rows() != X.cols()) return false;
  const double scale = std::max(1.0, X.norm());
  return (X - X.adjoint()).norm() <= rel_tol * scale;
}

double frobenius_norm(const ComplexMatrix& X) noexcept { return X.norm(); }

double spectral_norm(const ComplexMatrix& X) {
  if (X.size() == 0) return 0.0;
  Eigen::BDCSVD<ComplexMatrix> svd(X);
  return svd.singularValues()(0);
}

HermEigDecomposition herm_eig(const ComplexMatrix& H) {
  require_hermitian(H, "herm_eig input");
  // Symmetrize so the solver sees an exactly Hermitian matrix.
  const ComplexMatrix sym = 0.5 * (H + H.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidMatrix, "Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix abs_op(const ComplexMatrix& X) {
  require_square_finite(X, "abs_op input");
  const ComplexMatrix gram = X.adjoint() * X;
  const auto eig = herm_eig(0.5 * (gram + gram.adjoint()));
  RealVector roots = eig.eigenvalues.unaryExpr([](double v) { return std::sqrt(std::max(v, 0.0)); });
  ComplexMatrix result = eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  return 0.5 * (result + result.adjoint());
}

double default_pd_tolerance(const ComplexMatrix& P) { return 1e-12 * spectral_norm(P); }

namespace {

double resolve_pd_tolerance(const ComplexMatrix& P, double tol_pd) {
  return tol_pd < 0.0 ? default_pd_tolerance(P) : tol_pd;
}

void require_positive_definite(const ComplexMatrix& P, double tol, const char* what) {
  const auto eig = herm_eig(P);
  if (eig.eigenvalues(0) <= tol) {
    throw Error(ErrorCode::NotPositiveDefinite,
                std::string(what) + ": smallest eigenvalue " + std::to_string(eig.eigenvalues(0)) +
                    " is not above tolerance " + std::to_string(tol));
  }
}

}  // namespace

ComplexMatrix cholesky_lower(const ComplexMatrix& P, double tol_pd) {
  require_hermitian(P, "cholesky_lower input");
  const double tol = resolve_pd_tolerance(P, tol_pd);
  require_positive_definite(P, tol, "cholesky_lower");
  Eigen::LLT<ComplexMatrix> llt(0.5 * (P + P.adjoint()));
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::NotPositiveDefinite, "cholesky_lower: factorization broke down");
  }
  ComplexMatrix L = llt.matrixL();
  return L;
}

ComplexMatrix reverse_cholesky(const ComplexMatrix& P, double tol_pd) {
  require_hermitian(P, "reverse_cholesky input");
  const double tol = resolve_pd_tolerance(P, tol_pd);
  require_positive_definite(P, tol, "reverse_cholesky");

  const Eigen::Index n = P.rows();
  ComplexMatrix R = ComplexMatrix::Zero(n, n);
  // Row j of R is fixed by the entries P(j, 0..j) once rows j+1..n-1 are known:
  //   P(j, i) = Σ_{k ≥ j} conj(R(k, j))·R(k, i),  i ≤ j.
  for (Eigen::Index j = n - 1; j >= 0; --j) {
    double pivot = P(j, j).real();
    for (Eigen::Index k = j + 1; k < n; ++k) pivot -= std::norm(R(k, j));
    if (!(pivot > tol)) {
      throw Error(ErrorCode::NotPositiveDefinite,
                  "reverse_cholesky: pivot " + std::to_string(pivot) + " at index " +
                      std::to_string(j) + " is not above tolerance");
    }
    const double d = std::sqrt(pivot);
    R(j, j) = d;
    for (Eigen::Index i = 0; i < j; ++i) {
      Complex acc = P(j, i);
      for (Eigen::Index k = j + 1; k < n; ++k) acc -= std::conj(R(k, j)) * R(k, i);
      R(j, i) = acc / d;
    }
  }
  return R;
}

ComplexMatrix exchange_matrix(Eigen::Index n) {
  ComplexMatrix J = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) J(i, n - 1 - i) = 1.0;
  return J;
}

}  // namespace subdiag
