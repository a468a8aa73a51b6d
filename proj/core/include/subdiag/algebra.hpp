#pragma once

// Finite-dimensional subdiagonal algebras: block lower-triangular matrices
// inside M_n, the block-diagonal conditional expectation, and the
// normalized trace.

#include <cstdint>
#include <span>
#include <vector>

#include "subdiag/matkernel.hpp"

namespace subdiag {

/// Ordered partition (n_1, …, n_k) of n.
class BlockStructure {
 public:
  /// Throws InvalidPartition on an empty list or a nonpositive part.
  static BlockStructure from_partition(std::span<const int> partition);

  const std::vector<int>& partition() const noexcept { return partition_; }
  Eigen::Index dim() const noexcept { return static_cast<Eigen::Index>(block_of_.size()); }
  int num_blocks() const noexcept { return static_cast<int>(partition_.size()); }

  int block_of(Eigen::Index i) const { return block_of_[static_cast<std::size_t>(i)]; }
  Eigen::Index block_begin(int p) const { return offsets_[static_cast<std::size_t>(p)]; }
  Eigen::Index block_size(int p) const { return partition_[static_cast<std::size_t>(p)]; }

  /// Entry (i, j) lies strictly above the block line.
  bool above_line(Eigen::Index i, Eigen::Index j) const { return block_of(i) < block_of(j); }
  bool same_block(Eigen::Index i, Eigen::Index j) const { return block_of(i) == block_of(j); }

 private:
  BlockStructure() = default;

  std::vector<int> partition_;
  std::vector<int> block_of_;
  std::vector<Eigen::Index> offsets_;
};

/// (𝒜, φ, τ): 𝒜 the block lower-triangular matrices, φ the block-diagonal
/// part, τ = tr/n on the ambient algebra M_n.
class SubdiagonalAlgebra {
 public:
  explicit SubdiagonalAlgebra(BlockStructure structure) : structure_(std::move(structure)) {}

  const BlockStructure& structure() const noexcept { return structure_; }
  Eigen::Index dim() const noexcept { return structure_.dim(); }
  int num_blocks() const noexcept { return structure_.num_blocks(); }

  bool in_pattern(Eigen::Index i, Eigen::Index j) const { return !structure_.above_line(i, j); }

  /// Complex dimension of 𝒜 (Σ_{p≥q} n_p n_q).
  Eigen::Index algebra_dimension() const noexcept;
  /// Complex dimension of 𝒟 = 𝒜 ∩ 𝒜* (Σ n_p²).
  Eigen::Index diagonal_dimension() const noexcept;

  /// φ: the block-diagonal part of X.
  ComplexMatrix expectation(const ComplexMatrix& X) const;
  /// X − φ(X) restricted to the pattern of 𝒜 (entries above the line dropped).
  ComplexMatrix strictly_lower_part(const ComplexMatrix& X) const;
  /// Zeroes every entry above the block line.
  ComplexMatrix project_to_pattern(const ComplexMatrix& X) const;

  /// τ(X) = tr(X)/n.
  Complex trace(const ComplexMatrix& X) const;

  /// Every entry above the block line has modulus ≤ tol·max(1, ‖X‖_F).
  bool membership(const ComplexMatrix& X, double tol = 0.0) const;

  /// Inverse of an element of 𝒜 by block forward substitution, so the
  /// result carries exact zeros above the line. Throws
  /// NotInvertibleInAlgebra when a diagonal block is singular to working
  /// precision (reciprocal condition below 1e-14).
  ComplexMatrix algebra_inverse(const ComplexMatrix& A) const;

  void require_dim(const ComplexMatrix& X, const char* what) const;

 private:
  BlockStructure structure_;
};

SubdiagonalAlgebra make_algebra(std::span<const int> partition);

inline SubdiagonalAlgebra make_algebra(std::initializer_list<int> partition) {
  return make_algebra(std::span<const int>(partition.begin(), partition.size()));
}

struct AxiomReport {
  Eigen::Index sd1_span_dim = 0;
  Eigen::Index expected_span_dim = 0;
  // SD2
  double idempotence_residual = 0.0;
  double positivity_residual = 0.0;    // max(0, −λ_min(φ(X))/‖X‖₂) over psd X
  double faithfulness_residual = 0.0;  // see verify_axioms
  double bimodule_residual = 0.0;
  // SD3
  double sd3_max_residual = 0.0;
  double finiteness_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Randomized check of SD1–SD3 and τ∘φ = τ.
///
/// SD1 is exact: the real-linear span of the matrix units of 𝒜 and their
/// adjoints (each with its i-multiple) is ranked; sd1_span_dim is that real
/// rank halved, i.e. a complex dimension, to be compared with n².
///
/// Faithfulness is witnessed two ways on random psd X of assorted ranks:
/// ‖X‖_F ≤ tr φ(X) must hold, and forcing φ = 0 via Z = X − φ(X) must
/// leave Z either zero or with a negative eigenvalue. The residual is the
/// worst relative violation of either statement.
///
/// Trials use Rng::for_trial(seed, t), so results do not depend on order.
AxiomReport verify_axioms(const SubdiagonalAlgebra& alg, int trials, std::uint64_t seed,
                          double tol = 1e-12);

struct MaximalityWitness {
  Eigen::Index row = 0;  // e_{row,col} lies above the block line
  Eigen::Index col = 0;
  /// ‖φ(e_ij·e_ji) − φ(e_ij)·φ(e_ji)‖_F for the enlarged algebra.
  double violation = 0.0;
};

/// For every matrix unit above the line, the SD3 failure caused by adding
/// it to 𝒜. Empty exactly when there is one block.
std::vector<MaximalityWitness> maximality_probe(const SubdiagonalAlgebra& alg);

}  // namespace subdiag
