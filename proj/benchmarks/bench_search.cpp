#include <benchmark/benchmark.h>

#include "pstraj/search/config.hpp"
#include "pstraj/search/evaluate.hpp"
#include "pstraj/zoo/tsp.hpp"

using namespace pstraj;

namespace {

void BM_HeldKarp(benchmark::State& state) {
  const auto inst = fixtures::random_tsp("bench", static_cast<std::size_t>(state.range(0)), 9);
  const auto& d = std::get<TspData>(inst.data).dist;
  for (auto _ : state) benchmark::DoNotOptimize(zoo::held_karp(d));
}
BENCHMARK(BM_HeldKarp)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond);

void BM_EvaluateCandidate(benchmark::State& state) {
  const auto& reg = fixtures::builtin_registry();
  const auto fp = search::default_search_fingerprint();
  const auto spec = AlgorithmSpec::dsl(parse_sexpr("(add (feat dist_to_current) (mul (const 0.3) (feat dist_to_destination)))"));
  for (auto _ : state) benchmark::DoNotOptimize(search::evaluate_candidate(spec, fp, reg));
}
BENCHMARK(BM_EvaluateCandidate)->Unit(benchmark::kMicrosecond);

}  // namespace
