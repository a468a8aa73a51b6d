#pragma once

// Seeded random instance generation.
//
// The stream is frozen so that suite reports reproduce across compilers and
// standard-library versions:
//   * engine: std::mt19937_64 (bit-exact by the C++ standard);
//   * per-trial seeding: splitmix64(seed ^ splitmix64(trial + 1));
//   * uniform in [0,1): top 53 bits of one engine draw times 2^-53;
//   * normal: Marsaglia polar method on two uniforms mapped to (-1,1),
//     second variate cached;
//   * standard complex normal: re and im each N(0, 1/2), so E|z|² = 1.
// std::*_distribution is deliberately unused since its output is
// implementation-defined.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "subdiag/matkernel.hpp"

namespace subdiag {

class SubdiagonalAlgebra;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for trial `trial` of a run seeded with `seed`.
  static Rng for_trial(std::uint64_t seed, std::uint64_t trial);

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  double normal();
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  std::optional<double> cached_normal_;
};

ComplexMatrix random_gaussian_matrix(Rng& rng, Eigen::Index n);

/// G·G*/n + shift·I for a complex Gaussian G.
ComplexMatrix random_spd(Rng& rng, Eigen::Index n, double shift = 0.1);

/// Positive semidefinite of the given rank (G·G* with G n×rank).
ComplexMatrix random_psd(Rng& rng, Eigen::Index n, Eigen::Index rank);

/// Haar-distributed unitary (QR of a Gaussian with phase correction).
ComplexMatrix random_unitary(Rng& rng, Eigen::Index n);

/// Random composition of n (ordered partition into positive parts).
std::vector<int> random_partition(Rng& rng, int n);

/// Complex Gaussian entries on the pattern of the algebra, zeros above it.
ComplexMatrix random_algebra_element(Rng& rng, const SubdiagonalAlgebra& alg);

/// Complex Gaussian entries on the block diagonal only.
ComplexMatrix random_block_diagonal(Rng& rng, const SubdiagonalAlgebra& alg);

/// Every composition of n, in lexicographic order.
std::vector<std::vector<int>> all_partitions(int n);

}  // namespace subdiag
