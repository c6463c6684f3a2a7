#include <benchmark/benchmark.h>

#include "shiftscope/certify.hpp"
#include "shiftscope/sampling.hpp"
#include "shiftscope/spectral.hpp"

namespace {

using namespace shiftscope;

const WeightSequence& lacunary() {
  static WeightSequence w{LacunaryBlocksRule{cplx{2.0, 0.0}, cplx{1.0, 0.0}}};
  return w;
}

void BM_LogPrefixBuild(benchmark::State& state) {
  const index_t n = state.range(0);
  for (auto _ : state) {
    LogPrefix pref(lacunary(), -n, n);
    benchmark::DoNotOptimize(pref.at(0));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_LogPrefixBuild)->Range(1 << 10, 1 << 17)->Complexity(benchmark::oN);

void BM_AnchoredQuantity(benchmark::State& state) {
  const index_t n = state.range(0);
  for (auto _ : state) {
    auto e = estimate_quantity(lacunary(), Quantity::r3_plus, n, 1);
    benchmark::DoNotOptimize(e.estimate);
  }
}
BENCHMARK(BM_AnchoredQuantity)->Range(1 << 10, 1 << 16);

void BM_SweptQuantity(benchmark::State& state) {
  const index_t k = state.range(0);
  for (auto _ : state) {
    auto e = estimate_quantity(lacunary(), Quantity::r_plus, 16, k);
    benchmark::DoNotOptimize(e.estimate);
  }
}
BENCHMARK(BM_SweptQuantity)->Range(1 << 10, 1 << 16);

void BM_OpNormTruncated(benchmark::State& state) {
  const index_t n = state.range(0);
  ShiftPolynomial p;
  p.forward = {cplx{1.0, 0.0}, cplx{0.5, 0.25}, cplx{0.0, 0.0}, cplx{-0.75, 0.1}};
  for (auto _ : state) {
    auto r = op_norm_truncated(lacunary(), p, n, 1e-9);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_OpNormTruncated)->Range(32, 256);

void BM_GreedyNet(benchmark::State& state) {
  const index_t count = state.range(0);
  std::vector<LatticeVector> points;
  for (index_t i = 0; i < count; ++i) {
    SampleStream stream(7, static_cast<std::uint64_t>(i));
    LatticeVector v;
    for (index_t j = 0; j < 16; ++j) v.terms.emplace_back(j, stream.gaussian());
    points.push_back(std::move(v));
  }
  for (auto _ : state) {
    auto rep = greedy_net(points, 0.5);
    benchmark::DoNotOptimize(rep.net_size);
  }
}
BENCHMARK(BM_GreedyNet)->Range(64, 512);

}  // namespace

BENCHMARK_MAIN();
