#include "pstraj/search/eoh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pstraj/behavesim.hpp"
#include "pstraj/error.hpp"

namespace pstraj::search {

bool dominates(double f1_i, double f2_i, double f1_j, double f2_j) noexcept {
  return f1_i <= f1_j && f2_i <= f2_j && (f1_i < f1_j || f2_i < f2_j);
}

std::vector<double> softmax(std::span<const double> v) {
  if (v.empty()) return {};
  const double top = *std::max_element(v.begin(), v.end());
  std::vector<double> out(v.size());
  double z = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::exp(v[i] - top);
    z += out[i];
  }
  for (double& x : out) x /= z;
  return out;
}

DominanceTrace dominance_dissimilarity(const Matrix& sim, std::span<const double> obj1, std::span<const double> obj2) {
  const std::size_t n = obj1.size();
  if (n == 0) throw Error(Errc::EmptyPopulation, "population is empty");
  if (sim.rows != n || sim.cols != n || obj2.size() != n) {
    throw Error(Errc::LengthMismatch, "similarity matrix and objectives disagree on the population size");
  }
  DominanceTrace t{Matrix(n, n), Matrix(n, n), Matrix(n, n), std::vector<double>(n, 0.0), {}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      t.s(i, j) = -sim(i, j);
      t.d(i, j) = dominates(obj1[i], obj2[i], obj1[j], obj2[j]) ? 1.0 : 0.0;
      t.s_prime(i, j) = t.s(i, j) * t.d(i, j);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) t.v[j] += t.s_prime(i, j);
  }
  t.pi = softmax(t.v);
  return t;
}

DominanceTrace dominance_dissimilarity(std::span<const ScoredAlgorithm> pop, std::span<const PSTraj> incumbent,
                                       const TrajSimConfig& cfg, const InstanceRegistry* reg, std::size_t workers) {
  if (pop.empty()) throw Error(Errc::EmptyPopulation, "population is empty");
  const Matrix sim = sim_matrix(pop, cfg, reg, workers);
  std::vector<double> f1(pop.size());
  std::vector<double> f2(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) {
    f1[i] = pop[i].fitness;
    f2[i] = behave_sim_traj(pop[i].trajs, incumbent, cfg, reg);
  }
  return dominance_dissimilarity(sim, f1, f2);
}

std::vector<std::size_t> sample_parents(std::span<const double> pi, std::size_t d, Rng& rng) {
  std::vector<std::size_t> out(d);
  for (auto& k : out) k = rng.weighted(pi);
  return out;
}

std::vector<ScoredAlgorithm> eoh_parent_select(std::span<const ScoredAlgorithm> pop, std::span<const PSTraj> incumbent,
                                               std::size_t d, const TrajSimConfig& cfg, Rng& rng,
                                               const InstanceRegistry* reg, std::size_t workers) {
  if (pop.empty()) throw Error(Errc::EmptyPopulation, "cannot select parents from an empty population");
  const auto t = dominance_dissimilarity(pop, incumbent, cfg, reg, workers);
  std::vector<ScoredAlgorithm> out;
  for (std::size_t k : sample_parents(t.pi, d, rng)) out.push_back(pop[k]);
  return out;
}

std::vector<std::size_t> survivor_order(std::span<const double> v, std::size_t n) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  idx.resize(std::min(n, idx.size()));
  return idx;
}

std::vector<ScoredAlgorithm> eoh_manage_population(std::span<const ScoredAlgorithm> pop,
                                                   std::span<const PSTraj> incumbent, std::size_t n,
                                                   const TrajSimConfig& cfg, const InstanceRegistry* reg,
                                                   std::size_t workers) {
  if (pop.empty()) throw Error(Errc::EmptyPopulation, "population is empty");
  if (pop.size() < n) {
    throw Error(Errc::PopTooSmall,
                "population of " + std::to_string(pop.size()) + " cannot keep " + std::to_string(n) + " survivors");
  }
  const auto t = dominance_dissimilarity(pop, incumbent, cfg, reg, workers);
  std::vector<ScoredAlgorithm> out;
  for (std::size_t k : survivor_order(t.v, n)) out.push_back(pop[k]);
  return out;
}

}  // namespace pstraj::search
