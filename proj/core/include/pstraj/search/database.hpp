#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pstraj/fixtures.hpp"
#include "pstraj/rng.hpp"
#include "pstraj/search/config.hpp"

namespace pstraj::search {

/// Members that share a fitness (after rounding to 9 decimals).
struct FitnessCluster {
  double fitness = 0.0;
  std::vector<ScoredAlgorithm> members;
};

struct Island {
  std::vector<FitnessCluster> clusters;

  [[nodiscard]] std::size_t size() const noexcept;
  [[nodiscard]] bool empty() const noexcept { return size() == 0; }
  /// Members in cluster order.
  [[nodiscard]] std::vector<const ScoredAlgorithm*> members() const;
  /// Lowest fitness in the island; +inf when empty.
  [[nodiscard]] double best_fitness() const noexcept;
  /// First member holding best_fitness(). Island must be non-empty.
  [[nodiscard]] const ScoredAlgorithm& best() const;
};

struct IslandDatabase {
  std::vector<Island> islands;
  std::uint64_t eval_counter = 0;
  SearchConfig config;
};

/// The cluster key: fitness rounded to 9 decimal places.
double fitness_key(double fitness);

/// Puts `cand` into the fitness cluster of `island` (new cluster if none).
void insert_member(Island& island, ScoredAlgorithm cand);

/// Clusters already-evaluated candidates by behavior into cfg.n_isl islands.
/// Islands the cut leaves empty get a copy of the overall best candidate.
IslandDatabase build_database(std::vector<ScoredAlgorithm> initial, const SearchConfig& cfg,
                              const InstanceRegistry* reg = nullptr, std::size_t workers = 1);

/// Samples cfg.n_init random trees from `rng`, evaluates them and calls
/// build_database. Evaluation errors come back as EvaluationFailure naming
/// the candidate index.
IslandDatabase init_database(const SearchConfig& cfg, const InstanceRegistry& reg, Rng& rng, std::size_t workers = 1);

struct ParentDraw {
  const ScoredAlgorithm* first = nullptr;
  const ScoredAlgorithm* second = nullptr;
  std::size_t first_island = 0;
  std::size_t second_island = 0;
  bool inter_island = false;
  /// S1 was drawn but fewer than two islands were populated.
  bool fell_back = false;
};

/// Picks one member of `island`: a cluster by Boltzmann weights on fitness
/// rank (best rank scores 1, worst 0) over cluster_temp, then a member by
/// Boltzmann weights on negated normalized token length over length_temp.
/// `exclude` is never returned. Throws InsufficientMembers if nothing is left.
const ScoredAlgorithm& pick_member(const Island& island, const SearchConfig& cfg, Rng& rng,
                                   const ScoredAlgorithm* exclude = nullptr);

/// Inter-island (S1) with probability p_s1, else intra-island (S2). S2 only
/// draws among islands holding at least two members; InsufficientMembers
/// when there is none.
ParentDraw select_parents(const IslandDatabase& db, Rng& rng);

/// Mean behave_sim_traj of `trajs` against the members of each island;
/// nullopt for empty islands.
std::vector<std::optional<double>> island_similarities(const IslandDatabase& db, std::span<const PSTraj> trajs,
                                                       const InstanceRegistry* reg = nullptr);

/// Places `cand` on the island it is most similar to on average (lowest
/// index on ties) and returns that index. Throws FingerprintMismatch when
/// its trajectories do not follow the configured fingerprint.
std::size_t register_candidate(IslandDatabase& db, ScoredAlgorithm cand, const InstanceRegistry* reg = nullptr);

/// Empties the floor(n_isl / 2) islands with the worst best fitness (lower
/// index first among ties) and reseeds each with the best member of a
/// uniformly drawn surviving island.
void restart_islands(IslandDatabase& db, Rng& rng);

/// Intra-island distances (nullopt for islands with < 2 members) and the
/// mean inter-island distance over populated island pairs, both on at most
/// cfg.prototype_cap evenly spaced members per island.
struct DiversityStats {
  std::vector<std::optional<double>> intra;
  std::optional<double> mean_intra;
  std::optional<double> mean_inter;
};

DiversityStats diversity(const IslandDatabase& db, const InstanceRegistry* reg = nullptr);

}  // namespace pstraj::search
