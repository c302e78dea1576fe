#include <benchmark/benchmark.h>

#include "pstraj/behavesim.hpp"
#include "pstraj/rng.hpp"
#include "pstraj/soldist.hpp"
#include "pstraj/trajsim.hpp"
#include "pstraj/zoo/zoo.hpp"

using namespace pstraj;

namespace {

PSTraj walk(Rng& rng, std::size_t n, std::size_t dim) {
  PSTraj t;
  std::vector<double> x(dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& v : x) v += rng.uniform(-0.2, 0.2);
    t.steps.push_back(Solution::real(x));
  }
  return t;
}

void BM_Dtw(benchmark::State& state) {
  Rng rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = walk(rng, n, 2);
  const auto y = walk(rng, n + n / 3, 2);
  const DistConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(dtw_distance(x.steps, y.steps, cfg));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Dtw)->RangeMultiplier(2)->Range(16, 512)->Complexity(benchmark::oNSquared);

void BM_EditDistance(benchmark::State& state) {
  Rng rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::uint32_t> a(n), b(n);
  for (auto& v : a) v = static_cast<std::uint32_t>(rng.below(20));
  for (auto& v : b) v = static_cast<std::uint32_t>(rng.below(20));
  for (auto _ : state) benchmark::DoNotOptimize(edit_distance(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EditDistance)->RangeMultiplier(4)->Range(16, 4096)->Complexity(benchmark::oNSquared);

// Growing partial tours take the single-table shortcut.
void BM_PrefixTrajectories(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::uint32_t> p(n), q(n);
  for (std::uint32_t i = 0; i < n; ++i) p[i] = q[n - 1 - i] = i;
  PSTraj x, y;
  for (std::size_t i = 1; i <= n; ++i) {
    x.steps.push_back(Solution::perm({p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i)}));
    y.steps.push_back(Solution::perm({q.begin(), q.begin() + static_cast<std::ptrdiff_t>(i)}));
  }
  const TrajSimConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(sim_pstraj(x, y, cfg));
}
BENCHMARK(BM_PrefixTrajectories)->Arg(20)->Arg(100)->Arg(400);

void BM_BehaveSimTsp(benchmark::State& state) {
  const auto& reg = fixtures::builtin_registry();
  const auto fp = fingerprint_for_task(reg, Task::Tsp);
  const auto a = zoo::spec("tsp_nearest_neighbor");
  const auto b = zoo::spec("tsp_farthest_neighbor");
  for (auto _ : state) benchmark::DoNotOptimize(behave_sim(a, b, fp, reg));
}
BENCHMARK(BM_BehaveSimTsp)->Unit(benchmark::kMicrosecond);

}  // namespace
