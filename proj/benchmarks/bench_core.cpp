#include <benchmark/benchmark.h>

#include "gfbimap/algdecomp.hpp"
#include "gfbimap/normalizer.hpp"
#include "gfbimap/oracle.hpp"

using namespace gfbimap;

namespace {

Mat random_matrix(const Field& F, int n, Rng& rng) {
  Mat M(F, n, n);
  for (auto& x : M.a) x = static_cast<Fe>(rng.below(F.q()));
  return M;
}

void BM_FieldMul(benchmark::State& state) {
  const Field& F = Field::get(3, 2);
  Fe acc = 1;
  for (auto _ : state) {
    for (Fe a = 1; a < F.q(); ++a) acc = F.mul(acc, a);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_FieldMul);

void BM_Rref(benchmark::State& state) {
  const Field& F = Field::get(3, 1);
  Rng rng(7);
  int n = static_cast<int>(state.range(0));
  Mat M = random_matrix(F, n, rng);
  for (auto _ : state) {
    auto r = rref(M);
    benchmark::DoNotOptimize(r.rank);
  }
}
BENCHMARK(BM_Rref)->Arg(8)->Arg(16)->Arg(32);

void BM_PolyFactor(benchmark::State& state) {
  const Field& F = Field::get(3, 2);
  Rng rng(11);
  std::vector<Fe> c(9);
  for (auto& x : c) x = static_cast<Fe>(rng.below(F.q()));
  c[8] = F.one();
  Poly f(c);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto fac = poly_factor(F, f, seed++);
    benchmark::DoNotOptimize(fac.size());
  }
}
BENCHMARK(BM_PolyFactor);

void BM_AdjointAlgebra(benchmark::State& state) {
  Bimap sy = fixture_sympl2(3);
  for (auto _ : state) {
    AlgebraPair A = adjoint_algebra(sy);
    benchmark::DoNotOptimize(A.dim());
  }
}
BENCHMARK(BM_AdjointAlgebra);

void BM_ClosureGL23(benchmark::State& state) {
  const Field& F = Field::get(3, 1);
  GenPair a{mat_from_ints(F, 2, 2, {2, 0, 0, 1}), mat_identity(F, 2)};
  GenPair b{mat_from_ints(F, 2, 2, {2, 1, 2, 0}), mat_identity(F, 2)};
  GenPair t{mat_from_ints(F, 2, 2, {1, 1, 0, 1}), mat_identity(F, 2)};
  for (auto _ : state) {
    BigInt order = closure_order({a, b, t}, 1000);
    benchmark::DoNotOptimize(order == 48);
  }
}
BENCHMARK(BM_ClosureGL23);

void BM_NormalizerPipeline(benchmark::State& state) {
  const Field& F = Field::get(3, 1);
  Mat e11 = mat_from_ints(F, 2, 2, {1, 0, 0, 0});
  Mat e12 = mat_from_ints(F, 2, 2, {0, 1, 0, 0});
  Mat e22 = mat_from_ints(F, 2, 2, {0, 0, 0, 1});
  AlgebraPair ut =
      algebra_from_pairs(F, 2, 2, {{e11, e11}, {e12, e12}, {e22, e22}});
  for (auto _ : state) {
    NormalizerResult N = normalizer_of(ut, 1, Caps{});
    benchmark::DoNotOptimize(N.orbit);
  }
}
BENCHMARK(BM_NormalizerPipeline);

void BM_BruteAutotopisms(benchmark::State& state) {
  Bimap sy = fixture_sympl2(3);
  for (auto _ : state) {
    ElementTable t = brute_autotopisms(sy);
    benchmark::DoNotOptimize(t.pairs.size());
  }
}
BENCHMARK(BM_BruteAutotopisms);

}  // namespace

BENCHMARK_MAIN();
