#include "subdiag/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "subdiag/error.hpp"
#include "subdiag/rng.hpp"

namespace subdiag {

BlockStructure BlockStructure::from_partition(std::span<const int> partition) {
  if (partition.empty()) {
    throw Error(ErrorCode::InvalidPartition, "partition is empty");
  }
  BlockStructure s;
  Eigen::Index offset = 0;
  for (std::size_t p = 0; p < partition.size(); ++p) {
    const int size = partition[p];
    if (size < 1) {
      throw Error(ErrorCode::InvalidPartition,
                  "partition entry " + std::to_string(p) + " is " + std::to_string(size));
    }
    s.partition_.push_back(size);
    s.offsets_.push_back(offset);
    s.block_of_.insert(s.block_of_.end(), static_cast<std::size_t>(size), static_cast<int>(p));
    offset += size;
  }
  return s;
}

SubdiagonalAlgebra make_algebra(std::span<const int> partition) {
  return SubdiagonalAlgebra(BlockStructure::from_partition(partition));
}

Eigen::Index SubdiagonalAlgebra::algebra_dimension() const noexcept {
  Eigen::Index total = 0;
  const auto& parts = structure_.partition();
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (std::size_t q = 0; q <= p; ++q) total += Eigen::Index{parts[p]} * parts[q];
  return total;
}

Eigen::Index SubdiagonalAlgebra::diagonal_dimension() const noexcept {
  Eigen::Index total = 0;
  for (int size : structure_.partition()) total += Eigen::Index{size} * size;
  return total;
}

void SubdiagonalAlgebra::require_dim(const ComplexMatrix& X, const char* what) const {
  if (X.rows() != dim() || X.cols() != dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " is " + std::to_string(X.rows()) + "x" +
                    std::to_string(X.cols()) + ", algebra dimension is " + std::to_string(dim()));
  }
}

ComplexMatrix SubdiagonalAlgebra::expectation(const ComplexMatrix& X) const {
  require_dim(X, "expectation argument");
  ComplexMatrix out = ComplexMatrix::Zero(dim(), dim());
  for (int p = 0; p < num_blocks(); ++p) {
    const auto b = structure_.block_begin(p);
    const auto s = structure_.block_size(p);
    out.block(b, b, s, s) = X.block(b, b, s, s);
  }
  return out;
}

ComplexMatrix SubdiagonalAlgebra::strictly_lower_part(const ComplexMatrix& X) const {
  require_dim(X, "strictly_lower_part argument");
  ComplexMatrix out = ComplexMatrix::Zero(dim(), dim());
  for (Eigen::Index j = 0; j < dim(); ++j)
    for (Eigen::Index i = 0; i < dim(); ++i)
      if (structure_.block_of(i) > structure_.block_of(j)) out(i, j) = X(i, j);
  return out;
}

ComplexMatrix SubdiagonalAlgebra::project_to_pattern(const ComplexMatrix& X) const {
  require_dim(X, "project_to_pattern argument");
  ComplexMatrix out = X;
  for (Eigen::Index j = 0; j < dim(); ++j)
    for (Eigen::Index i = 0; i < dim(); ++i)
      if (structure_.above_line(i, j)) out(i, j) = 0.0;
  return out;
}

Complex SubdiagonalAlgebra::trace(const ComplexMatrix& X) const {
  require_dim(X, "trace argument");
  return X.trace() / static_cast<double>(dim());
}

bool SubdiagonalAlgebra::membership(const ComplexMatrix& X, double tol) const {
  require_dim(X, "membership argument");
  const double bound = tol * std::max(1.0, X.norm());
  for (Eigen::Index j = 0; j < dim(); ++j)
    for (Eigen::Index i = 0; i < dim(); ++i)
      if (structure_.above_line(i, j) && std::abs(X(i, j)) > bound) return false;
  return true;
}

ComplexMatrix SubdiagonalAlgebra::algebra_inverse(const ComplexMatrix& A) const {
  require_dim(A, "algebra_inverse argument");
  if (!membership(A, 0.0)) {
    throw Error(ErrorCode::NotInAlgebra, "algebra_inverse: argument is not block lower triangular");
  }
  const int k = num_blocks();
  std::vector<ComplexMatrix> diag_inverse(static_cast<std::size_t>(k));
  for (int p = 0; p < k; ++p) {
    const auto b = structure_.block_begin(p);
    const auto s = structure_.block_size(p);
    Eigen::FullPivLU<ComplexMatrix> lu(A.block(b, b, s, s));
    if (!lu.isInvertible() || lu.rcond() < 1e-14) {
      throw Error(ErrorCode::NotInvertibleInAlgebra,
                  "algebra_inverse: diagonal block " + std::to_string(p) + " is singular");
    }
    diag_inverse[static_cast<std::size_t>(p)] = lu.inverse();
  }
  // Block forward substitution for A·X = I with X block lower triangular:
  //   X_pq = A_pp⁻¹ (δ_pq I − Σ_{q ≤ r < p} A_pr X_rq).
  ComplexMatrix X = ComplexMatrix::Zero(dim(), dim());
  for (int q = 0; q < k; ++q) {
    const auto bq = structure_.block_begin(q);
    const auto sq = structure_.block_size(q);
    for (int p = q; p < k; ++p) {
      const auto bp = structure_.block_begin(p);
      const auto sp = structure_.block_size(p);
      ComplexMatrix rhs = ComplexMatrix::Zero(sp, sq);
      if (p == q) rhs.setIdentity();
      for (int r = q; r < p; ++r) {
        const auto br = structure_.block_begin(r);
        const auto sr = structure_.block_size(r);
        rhs -= A.block(bp, br, sp, sr) * X.block(br, bq, sr, sq);
      }
      X.block(bp, bq, sp, sq) = diag_inverse[static_cast<std::size_t>(p)] * rhs;
    }
  }
  return X;
}

namespace {

// Real rank of the real-linear span of {E, iE : E matrix unit of 𝒜} ∪ adjoints,
// each matrix flattened to 2n² real coordinates.
Eigen::Index sd1_real_rank(const SubdiagonalAlgebra& alg) {
  const Eigen::Index n = alg.dim();
  std::vector<ComplexMatrix> generators;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!alg.in_pattern(i, j)) continue;
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(i, j) = 1.0;
      generators.push_back(e);
      generators.push_back(Complex(0.0, 1.0) * e);
      generators.push_back(e.adjoint());
      generators.push_back((Complex(0.0, 1.0) * e).adjoint());
    }
  }
  Eigen::MatrixXd span(2 * n * n, static_cast<Eigen::Index>(generators.size()));
  for (std::size_t g = 0; g < generators.size(); ++g) {
    const auto& m = generators[g];
    for (Eigen::Index idx = 0; idx < n * n; ++idx) {
      span(2 * idx, static_cast<Eigen::Index>(g)) = m(idx).real();
      span(2 * idx + 1, static_cast<Eigen::Index>(g)) = m(idx).imag();
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(span);
  return lu.rank();
}

double min_eigenvalue(const ComplexMatrix& H) { return herm_eig(H).eigenvalues(0); }

}  // namespace

AxiomReport verify_axioms(const SubdiagonalAlgebra& alg, int trials, std::uint64_t seed,
                          double tol) {
  AxiomReport report;
  report.tolerance = tol;
  const Eigen::Index n = alg.dim();
  report.expected_span_dim = n * n;
  report.sd1_span_dim = sd1_real_rank(alg) / 2;

  for (int t = 0; t < std::max(trials, 1); ++t) {
    Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(t));

    // Idempotence and finiteness on a general matrix.
    const ComplexMatrix X = random_gaussian_matrix(rng, n);
    const ComplexMatrix phiX = alg.expectation(X);
    report.idempotence_residual = std::max(
        report.idempotence_residual, (alg.expectation(phiX) - phiX).norm() / std::max(1.0, X.norm()));
    report.finiteness_residual =
        std::max(report.finiteness_residual, std::abs(alg.trace(phiX) - alg.trace(X)));

    // 𝒟-bimodule property φ(D₁XD₂) = D₁φ(X)D₂.
    const ComplexMatrix D1 = random_block_diagonal(rng, alg);
    const ComplexMatrix D2 = random_block_diagonal(rng, alg);
    const ComplexMatrix lhs = alg.expectation(D1 * X * D2);
    const ComplexMatrix rhs = D1 * phiX * D2;
    report.bimodule_residual = std::max(report.bimodule_residual,
                                        (lhs - rhs).norm() / std::max(1.0, D1.norm() * X.norm() * D2.norm()));

    // Positivity and faithfulness on psd inputs of varying rank.
    const Eigen::Index rank = 1 + static_cast<Eigen::Index>(t % static_cast<int>(n));
    const ComplexMatrix P = random_psd(rng, n, rank);
    const double scale = spectral_norm(P);
    const ComplexMatrix phiP = alg.expectation(P);
    const double lambda_min = min_eigenvalue(phiP);
    report.positivity_residual = std::max(report.positivity_residual, std::max(0.0, -lambda_min / scale));

    const double trace_bound_excess = std::max(0.0, P.norm() - phiP.trace().real()) / scale;
    const ComplexMatrix Z = P - phiP;  // φ(Z) = 0 by construction
    double forced_violation = 0.0;
    const double z_norm = Z.norm();
    if (z_norm > tol * scale) {
      // A nonzero Z with φ(Z) = 0 must have a negative eigenvalue; report how
      // far it is from having one.
      const double z_min = min_eigenvalue(Z);
      if (z_min >= -tol * z_norm) forced_violation = z_norm / scale;
    }
    report.faithfulness_residual =
        std::max({report.faithfulness_residual, trace_bound_excess, forced_violation});

    // SD3 on random pairs from 𝒜.
    const ComplexMatrix A = random_algebra_element(rng, alg);
    const ComplexMatrix B = random_algebra_element(rng, alg);
    const ComplexMatrix product_phi = alg.expectation(A * B);
    const ComplexMatrix phi_product = alg.expectation(A) * alg.expectation(B);
    report.sd3_max_residual = std::max(report.sd3_max_residual,
                                       (product_phi - phi_product).norm() / std::max(1.0, A.norm() * B.norm()));
  }

  report.pass = report.sd1_span_dim == report.expected_span_dim &&
                report.idempotence_residual <= tol && report.positivity_residual <= tol &&
                report.faithfulness_residual <= tol && report.bimodule_residual <= tol &&
                report.sd3_max_residual <= tol && report.finiteness_residual <= tol;
  return report;
}

std::vector<MaximalityWitness> maximality_probe(const SubdiagonalAlgebra& alg) {
  std::vector<MaximalityWitness> witnesses;
  const Eigen::Index n = alg.dim();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!alg.structure().above_line(i, j)) continue;
      ComplexMatrix e_ij = ComplexMatrix::Zero(n, n);
      e_ij(i, j) = 1.0;
      const ComplexMatrix e_ji = e_ij.transpose();
      const ComplexMatrix lhs = alg.expectation(e_ij * e_ji);
      const ComplexMatrix rhs = alg.expectation(e_ij) * alg.expectation(e_ji);
      witnesses.push_back({i, j, (lhs - rhs).norm()});
    }
  }
  return witnesses;
}

}  // namespace subdiag
