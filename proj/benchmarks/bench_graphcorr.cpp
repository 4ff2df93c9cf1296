#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "graphcorr/estimate.hpp"
#include "graphcorr/hyptest.hpp"
#include "graphcorr/samplers.hpp"
#include "graphcorr/spectral.hpp"

namespace {

using namespace graphcorr;

// Cosine graphon adjacency: a few outlying eigenvalues above a noise bulk.
Matrix graphon_dense(std::size_t n, std::uint64_t seed) {
  GraphonSpec spec;
  spec.n = n;
  spec.link.kind = LinkKind::Cosine;
  spec.link.scale = 0.5;
  return sample_graphon_pair(spec, seed).pair.a.to_dense();
}

// Erdos-Renyi adjacency: every eigenvalue after the first sits in the bulk.
Matrix er_dense(std::size_t n, std::uint64_t seed) {
  return sample_pair(ProbMatrix::constant(n, 0.3), CorrMatrix::constant(n, 0.0), seed).a.to_dense();
}

void BM_TopEigenpairs(benchmark::State& state, EigenMethod method, bool gapless) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  const Matrix m = gapless ? er_dense(n, 1) : graphon_dense(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(top_eigenpairs(m, k, EigenOrder::Magnitude, method));
}
BENCHMARK_CAPTURE(BM_TopEigenpairs, graphon_dense, EigenMethod::Dense, false)
    ->ArgsProduct({{200, 500, 1000}, {2, 3}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_TopEigenpairs, graphon_krylov, EigenMethod::Krylov, false)
    ->ArgsProduct({{200, 500, 1000}, {2, 3}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_TopEigenpairs, er_dense, EigenMethod::Dense, true)
    ->ArgsProduct({{500}, {2}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_TopEigenpairs, er_krylov, EigenMethod::Krylov, true)
    ->ArgsProduct({{500}, {2}})
    ->Unit(benchmark::kMillisecond);

void BM_SamplePair(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = ProbMatrix::constant(n, 0.3);
  const auto r = CorrMatrix::constant(n, 0.2);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_pair(p, r, ++seed));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * (n - 1) / 2));
}
BENCHMARK(BM_SamplePair)->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMillisecond);

void BM_Usvt(benchmark::State& state, UsvtConfig cfg) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix m = graphon_dense(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(usvt(m, cfg));
}
BENCHMARK_CAPTURE(BM_Usvt, threshold, UsvtConfig::threshold())
    ->Arg(200)->Arg(500)->Arg(1000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Usvt, rank3, UsvtConfig::fixed_rank(3))
    ->Arg(200)->Arg(500)->Arg(1000)
    ->Unit(benchmark::kMillisecond);

void BM_GraphonStatDiff(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  GraphonSpec spec;
  spec.n = n;
  spec.link.kind = LinkKind::Cosine;
  spec.link.scale = 0.5;
  spec.correlation.value = 0.1;
  const auto pair = sample_graphon_pair(spec, 3).pair;
  const auto cfg = UsvtConfig::fixed_rank(2);
  for (auto _ : state) benchmark::DoNotOptimize(graphon_stat_diff(pair, cfg));
}
BENCHMARK(BM_GraphonStatDiff)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_RocCurve(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> unif;
  std::vector<double> scores(size);
  std::vector<std::uint8_t> truth(size);
  for (std::size_t i = 0; i < size; ++i) {
    scores[i] = unif(gen);
    truth[i] = static_cast<std::uint8_t>(gen() % 2);
  }
  for (auto _ : state) benchmark::DoNotOptimize(roc_curve(scores, truth));
}
BENCHMARK(BM_RocCurve)->Arg(1 << 12)->Arg(1 << 16);

}  // namespace

BENCHMARK_MAIN();
