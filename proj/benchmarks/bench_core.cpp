#include <benchmark/benchmark.h>

#include "subdiag/classical.hpp"
#include "subdiag/factor.hpp"
#include "subdiag/rng.hpp"
#include "subdiag/szego.hpp"

using namespace subdiag;

namespace {

SubdiagonalAlgebra two_blocks(int n) { return make_algebra({n / 2, n - n / 2}); }

ComplexMatrix density(const SubdiagonalAlgebra& alg, std::uint64_t seed) {
  Rng rng(seed);
  ComplexMatrix W = random_spd(rng, alg.dim());
  return W / alg.trace(W).real();
}

void BM_FkDet(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto alg = two_blocks(n);
  Rng rng(1);
  const ComplexMatrix X = random_gaussian_matrix(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(fk_det(alg, X));
}
BENCHMARK(BM_FkDet)->Arg(4)->Arg(16)->Arg(64);

void BM_ReverseCholesky(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(2);
  const ComplexMatrix P = random_spd(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(reverse_cholesky(P));
}
BENCHMARK(BM_ReverseCholesky)->Arg(4)->Arg(16)->Arg(64);

void BM_ClosedForm(benchmark::State& state) {
  const auto alg = two_blocks(static_cast<int>(state.range(0)));
  const State rho = State::from_density(alg, density(alg, 3));
  for (auto _ : state) benchmark::DoNotOptimize(solve_closed_form(alg, rho).infimum_estimate);
}
BENCHMARK(BM_ClosedForm)->Arg(4)->Arg(6)->Arg(16);

void BM_Alternating(benchmark::State& state) {
  const auto alg = two_blocks(static_cast<int>(state.range(0)));
  const State rho = State::from_density(alg, density(alg, 4));
  for (auto _ : state) benchmark::DoNotOptimize(solve_alternating(alg, rho).infimum_estimate);
}
BENCHMARK(BM_Alternating)->Arg(4)->Arg(6);

void BM_BruteForce(benchmark::State& state) {
  const auto alg = make_algebra({2, 1});
  const State rho = State::from_density(alg, density(alg, 5));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_infimum(alg, rho));
}
BENCHMARK(BM_BruteForce)->Unit(benchmark::kMillisecond);

void BM_SzegoLadder(benchmark::State& state) {
  using namespace subdiag::classical;
  const CircleGrid grid(4096);
  const auto w = PolyOnCircle({1.0, -0.5}).modulus_squared(grid);
  const std::vector<std::size_t> degrees{static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(szego_ladder(w, degrees).back().value);
}
BENCHMARK(BM_SzegoLadder)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
