#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pstraj/algorithm.hpp"
#include "pstraj/fixtures.hpp"
#include "pstraj/rng.hpp"
#include "pstraj/trajsim.hpp"

namespace pstraj::search {

/// Every intermediate of the dominance-dissimilarity computation.
struct DominanceTrace {
  Matrix s;        // -sim off the diagonal, 0 on it
  Matrix d;        // d(i, j) = 1 iff member i dominates member j
  Matrix s_prime;  // elementwise product
  std::vector<double> v;   // column sums of s_prime
  std::vector<double> pi;  // softmax(v)
};

/// Both objectives are minimized. i dominates j when it is no worse in
/// either and strictly better in one.
bool dominates(double f1_i, double f2_i, double f1_j, double f2_j) noexcept;

/// Numerically stable softmax.
std::vector<double> softmax(std::span<const double> v);

/// Core computation on explicit inputs: `sim` is the population similarity
/// matrix, `obj1` the fitness and `obj2` each member's similarity to the
/// incumbent best.
DominanceTrace dominance_dissimilarity(const Matrix& sim, std::span<const double> obj1, std::span<const double> obj2);

/// Builds the similarity matrix and objectives of a population relative to
/// the incumbent's trajectories.
DominanceTrace dominance_dissimilarity(std::span<const ScoredAlgorithm> pop, std::span<const PSTraj> incumbent,
                                       const TrajSimConfig& cfg, const InstanceRegistry* reg = nullptr,
                                       std::size_t workers = 1);

/// d indices drawn with replacement from pi.
std::vector<std::size_t> sample_parents(std::span<const double> pi, std::size_t d, Rng& rng);

/// Throws EmptyPopulation.
std::vector<ScoredAlgorithm> eoh_parent_select(std::span<const ScoredAlgorithm> pop, std::span<const PSTraj> incumbent,
                                               std::size_t d, const TrajSimConfig& cfg, Rng& rng,
                                               const InstanceRegistry* reg = nullptr, std::size_t workers = 1);

/// Indices sorted by v descending (lower index first on ties), cut to n.
std::vector<std::size_t> survivor_order(std::span<const double> v, std::size_t n);

/// The n survivors in survivor_order. Throws PopTooSmall.
std::vector<ScoredAlgorithm> eoh_manage_population(std::span<const ScoredAlgorithm> pop,
                                                   std::span<const PSTraj> incumbent, std::size_t n,
                                                   const TrajSimConfig& cfg, const InstanceRegistry* reg = nullptr,
                                                   std::size_t workers = 1);

}  // namespace pstraj::search
