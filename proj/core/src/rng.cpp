#include "subdiag/rng.hpp"

#include <cmath>

#include "subdiag/algebra.hpp"

namespace subdiag {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng Rng::for_trial(std::uint64_t seed, std::uint64_t trial) {
  return Rng(splitmix64(seed ^ splitmix64(trial + 1)));
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

int Rng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

double Rng::normal() {
  if (cached_normal_) {
    const double v = *cached_normal_;
    cached_normal_.reset();
    return v;
  }
  double u = 0.0, v = 0.0, s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  cached_normal_ = v * factor;
  return u * factor;
}

Complex Rng::complex_normal() {
  constexpr double kHalfSqrt = 0.70710678118654752440;
  const double re = normal();
  const double im = normal();
  return {kHalfSqrt * re, kHalfSqrt * im};
}

ComplexMatrix random_gaussian_matrix(Rng& rng, Eigen::Index n) {
  ComplexMatrix G(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) G(i, j) = rng.complex_normal();
  return G;
}

ComplexMatrix random_spd(Rng& rng, Eigen::Index n, double shift) {
  const ComplexMatrix G = random_gaussian_matrix(rng, n);
  ComplexMatrix P = G * G.adjoint() / static_cast<double>(n);
  P += shift * ComplexMatrix::Identity(n, n);
  return 0.5 * (P + P.adjoint());
}

ComplexMatrix random_psd(Rng& rng, Eigen::Index n, Eigen::Index rank) {
  ComplexMatrix G(n, rank);
  for (Eigen::Index j = 0; j < rank; ++j)
    for (Eigen::Index i = 0; i < n; ++i) G(i, j) = rng.complex_normal();
  ComplexMatrix P = G * G.adjoint();
  return 0.5 * (P + P.adjoint());
}

ComplexMatrix random_unitary(Rng& rng, Eigen::Index n) {
  const ComplexMatrix G = random_gaussian_matrix(rng, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(G);
  ComplexMatrix Q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(R(j, j));
    if (mag > 0.0) Q.col(j) *= R(j, j) / mag;
  }
  return Q;
}

std::vector<int> random_partition(Rng& rng, int n) {
  // Each of the n-1 gaps between consecutive indices is a block boundary
  // with probability 1/2, which samples compositions uniformly.
  std::vector<int> parts;
  int current = 1;
  for (int gap = 1; gap < n; ++gap) {
    if (rng.next_u64() >> 63) {
      parts.push_back(current);
      current = 1;
    } else {
      ++current;
    }
  }
  parts.push_back(current);
  return parts;
}

ComplexMatrix random_algebra_element(Rng& rng, const SubdiagonalAlgebra& alg) {
  const Eigen::Index n = alg.dim();
  ComplexMatrix X = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if (alg.in_pattern(i, j)) X(i, j) = rng.complex_normal();
  return X;
}

ComplexMatrix random_block_diagonal(Rng& rng, const SubdiagonalAlgebra& alg) {
  const Eigen::Index n = alg.dim();
  ComplexMatrix X = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if (alg.structure().same_block(i, j)) X(i, j) = rng.complex_normal();
  return X;
}

std::vector<std::vector<int>> all_partitions(int n) {
  std::vector<std::vector<int>> out;
  if (n < 1) return out;
  // Bit g of mask set ⇔ boundary after index g.
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    std::vector<int> parts;
    int current = 1;
    for (int gap = 0; gap < n - 1; ++gap) {
      if (mask & (std::uint64_t{1} << (n - 2 - gap))) {
        parts.push_back(current);
        current = 1;
      } else {
        ++current;
      }
    }
    parts.push_back(current);
    out.push_back(std::move(parts));
  }
  return out;
}

}  // namespace subdiag
