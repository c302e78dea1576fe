#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pstraj/fixtures.hpp"
#include "pstraj/search/config.hpp"
#include "pstraj/search/generator.hpp"

namespace pstraj::search {

struct Checkpoint {
  std::uint64_t evals = 0;
  std::vector<std::optional<double>> intra;
  std::optional<double> mean_intra;
  std::optional<double> mean_inter;
};

struct SearchReport {
  SearchMode mode = SearchMode::Funsearch;
  Registration registration = Registration::BehaveSim;
  std::uint64_t seed = 0;
  std::size_t init_evaluations = 0;
  std::size_t evaluations = 0;
  std::size_t failures = 0;
  std::size_t parse_failures = 0;
  std::size_t restarts = 0;
  std::size_t s1_fallbacks = 0;
  /// Best fitness after initialization.
  double init_best = 0.0;
  /// Best-so-far fitness after each budgeted evaluation.
  std::vector<double> best_curve;
  double top1 = 0.0;
  /// Mean fitness of the 10 best distinct heuristics (fewer if fewer exist).
  double top10 = 0.0;
  std::string best_text;
  std::vector<Checkpoint> checkpoints;
  /// Islands (Funsearch) or the population (Eoh), without trajectories.
  Json snapshot;
  FingerprintSet fingerprint;
  Json config;
};

/// Runs cfg.mode with an internally constructed generator.
SearchReport run_search(const SearchConfig& cfg, const InstanceRegistry& reg, std::size_t workers = 1);
SearchReport run_search(const SearchConfig& cfg, SearchMode mode, const InstanceRegistry& reg,
                        std::size_t workers = 1);
/// Same loop with a caller-supplied generator.
SearchReport run_search(const SearchConfig& cfg, SearchMode mode, CandidateGenerator& gen, const InstanceRegistry& reg,
                        std::size_t workers = 1);

Json to_json(const SearchReport& r);
/// "eval,best" rows, one per budgeted evaluation.
std::string curve_csv(const SearchReport& r);
/// "evals,metric,island,value" rows: per-island intra distances, then the
/// mean_intra and mean_inter summaries (island left blank).
std::string checkpoint_csv(const SearchReport& r);

/// Snapshot members back as specs with their fitness (trajectories empty).
std::vector<ScoredAlgorithm> snapshot_members(const Json& snapshot);

}  // namespace pstraj::search
