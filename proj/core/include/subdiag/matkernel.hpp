#pragma once

// Dense complex matrix kernel: spectral decomposition, |X|, and the two
// Cholesky orientations used by the factorization and Szegő modules.

#include <complex>

#include <Eigen/Dense>

namespace subdiag {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct HermEigDecomposition {
  RealVector eigenvalues;  // ascending
  ComplexMatrix vectors;   // unitary, columns are eigenvectors
};

/// Throws InvalidMatrix unless X is square with finite entries.
void require_square_finite(const ComplexMatrix& X, const char* what = "matrix");

bool is_finite(const ComplexMatrix& X) noexcept;

/// ‖X − X*‖_F ≤ rel_tol·max(1, ‖X‖_F).
bool is_hermitian(const ComplexMatrix& X, double rel_tol = 1e-12) noexcept;

double frobenius_norm(const ComplexMatrix& X) noexcept;
double spectral_norm(const ComplexMatrix& X);

HermEigDecomposition herm_eig(const ComplexMatrix& H);

/// Positive square root of X*X, computed through herm_eig with negative
/// eigenvalue noise clamped to zero.
ComplexMatrix abs_op(const ComplexMatrix& X);

/// Default definiteness threshold: 1e-12·‖P‖₂.
double default_pd_tolerance(const ComplexMatrix& P);

/// P = L·L* with L lower triangular and positive real diagonal.
///
/// P must be Hermitian with every eigenvalue above `tol_pd`; a negative
/// `tol_pd` selects default_pd_tolerance(P). Semidefinite input is an error.
ComplexMatrix cholesky_lower(const ComplexMatrix& P, double tol_pd = -1.0);

/// P = R*·R with R lower triangular and positive real diagonal.
///
/// Computed by elimination from the last row upward; this is the
/// orientation that writes a positive operator as A*A with A in the
/// lower-triangular algebra.
ComplexMatrix reverse_cholesky(const ComplexMatrix& P, double tol_pd = -1.0);

/// Index-reversal permutation J (J² = I).
ComplexMatrix exchange_matrix(Eigen::Index n);

}  // namespace subdiag
