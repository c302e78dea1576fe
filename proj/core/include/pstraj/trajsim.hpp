#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "pstraj/soldist.hpp"
#include "pstraj/types.hpp"

namespace pstraj {

enum class TrajMeasure { Dtw, MeanPairwise, Erp, SegmentCosine };

std::string_view measure_name(TrajMeasure m) noexcept;
std::optional<TrajMeasure> parse_measure(std::string_view name) noexcept;

struct TrajSimConfig {
  TrajMeasure measure = TrajMeasure::Dtw;
  /// ERP gap reference; defaults to the zero vector / empty sequence.
  std::optional<Solution> erp_gap_ref;
  /// Fraction of trailing steps dropped, in [0, 1).
  double truncate_k = 0.0;
  /// Steps skipped between kept steps; 0 keeps every step.
  std::size_t sample_n = 0;
  DistConfig dist;
};

/// Throws BadConfig when truncate_k is outside [0, 1) or euclid_bound <= 0.
void validate_config(const TrajSimConfig& cfg);

/// Drops the last floor(k * |t|) steps, then keeps indices 0, n+1, 2(n+1), ...
PSTraj preprocess(const PSTraj& t, const TrajSimConfig& cfg);

/// Pairwise solution distances, rows indexed by x. Sequence trajectories
/// whose steps are all prefixes of their final step are served from one
/// Levenshtein table over the two final sequences.
Matrix cost_matrix(std::span<const Solution> x, std::span<const Solution> y, const DistConfig& cfg,
                   const ProblemInstance* inst = nullptr);

/// Minimum-cost monotone alignment over an explicit cost matrix
/// (moves (1,0), (0,1), (1,1) from the first to the last cell).
double dtw_from_costs(const Matrix& costs);

/// Throws PayloadMismatch when payload variants differ.
double dtw_distance(std::span<const Solution> x, std::span<const Solution> y, const DistConfig& cfg,
                    const ProblemInstance* inst = nullptr);

/// 1 - DTW / min(|X|, |Y|) on preprocessed trajectories, clamped to [0, 1].
double sim_pstraj(const PSTraj& x, const PSTraj& y, const TrajSimConfig& cfg, const ProblemInstance* inst = nullptr);

/// Step-by-step mean distance over the shorter length.
double mean_pairwise_distance(std::span<const Solution> x, std::span<const Solution> y, const DistConfig& cfg,
                              const ProblemInstance* inst = nullptr);

/// Edit distance with real penalty. Either side may be empty.
double erp_distance(std::span<const Solution> x, std::span<const Solution> y, const DistConfig& cfg,
                    const std::optional<Solution>& gap_ref = std::nullopt, const ProblemInstance* inst = nullptr);

/// Mean cosine between corresponding step-to-step segments, in [-1, 1].
double segment_cosine_sim(std::span<const Solution> x, std::span<const Solution> y);

/// Similarity in [0, 1] under cfg.measure, after preprocessing both inputs.
/// Distances map to 1 - d / min(|X|, |Y|) (Dtw, Erp) or 1 - d (MeanPairwise);
/// segment cosine maps to (1 + cos) / 2.
double trajectory_similarity(const PSTraj& x, const PSTraj& y, const TrajSimConfig& cfg,
                             const ProblemInstance* inst = nullptr);

}  // namespace pstraj
