#include <doctest.h>

#include <cmath>
#include <set>

#include "subdiag/algebra.hpp"
#include "subdiag/rng.hpp"

using namespace subdiag;

TEST_CASE("mt19937_64 stream is the standard one") {
  // The C++ standard fixes the 10000th output of a default-seeded engine.
  std::mt19937_64 reference;
  reference.discard(9999);
  CHECK(reference() == 9981545732273789042ULL);

  Rng rng(5489u);
  std::uint64_t v = 0;
  for (int i = 0; i < 10000; ++i) v = rng.next_u64();
  CHECK(v == 9981545732273789042ULL);
}

TEST_CASE("per-trial streams are deterministic and distinct") {
  Rng a = Rng::for_trial(7, 3);
  Rng b = Rng::for_trial(7, 3);
  Rng c = Rng::for_trial(7, 4);
  const auto va = a.next_u64();
  CHECK(va == b.next_u64());
  CHECK(va != c.next_u64());
}

TEST_CASE("normal variates have unit variance and complex normals unit modulus square") {
  Rng rng(11);
  double sum = 0.0, sum_sq = 0.0, cplx = 0.0;
  constexpr int kDraws = 200000;
  for (int i = 0; i < kDraws; ++i) {
    const double x = rng.normal();
    sum += x;
    sum_sq += x * x;
    cplx += std::norm(rng.complex_normal());
  }
  CHECK(std::abs(sum / kDraws) < 0.01);
  CHECK(std::abs(sum_sq / kDraws - 1.0) < 0.02);
  CHECK(std::abs(cplx / kDraws - 1.0) < 0.02);
}

TEST_CASE("uniform stays in [0,1)") {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("random unitary is unitary") {
  Rng rng(1);
  const ComplexMatrix U = random_unitary(rng, 6);
  CHECK((U.adjoint() * U - ComplexMatrix::Identity(6, 6)).norm() < 1e-12);
}

TEST_CASE("all_partitions enumerates compositions") {
  CHECK(all_partitions(1).size() == 1);
  CHECK(all_partitions(4).size() == 8);
  std::set<std::vector<int>> unique;
  for (const auto& p : all_partitions(5)) {
    int total = 0;
    for (int x : p) {
      CHECK(x >= 1);
      total += x;
    }
    CHECK(total == 5);
    unique.insert(p);
  }
  CHECK(unique.size() == 16);
}

TEST_CASE("random_partition sums to n") {
  Rng rng(9);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 8;
    int total = 0;
    for (int x : random_partition(rng, n)) total += x;
    CHECK(total == n);
  }
}

TEST_CASE("random algebra elements respect the pattern") {
  const auto alg = make_algebra({2, 1, 2});
  Rng rng(4);
  const ComplexMatrix A = random_algebra_element(rng, alg);
  CHECK(alg.membership(A, 0.0));
  const ComplexMatrix D = random_block_diagonal(rng, alg);
  CHECK((alg.expectation(D) - D).norm() == 0.0);
}
