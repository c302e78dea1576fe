#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "pstraj/types.hpp"

namespace pstraj {

enum class DMaxRule { MaxLen, InstanceHint };

/// How solution pairs are normalized into [0, 1].
struct DistConfig {
  DMaxRule d_max_rule = DMaxRule::MaxLen;
  /// Euclidean bound D used when the instance carries no hint.
  double euclid_bound = 1.0;
};

/// Unit-cost Levenshtein distance (two-row dynamic program).
std::size_t edit_distance(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

/// Full (|a|+1) x (|b|+1) Levenshtein table; entry (i, j) is the distance
/// between the length-i prefix of a and the length-j prefix of b.
std::vector<std::size_t> edit_distance_table(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

/// Normalized distance in [0, 1]. Sequences: edit distance over d_max
/// (max length, or the instance hint). Vectors: min(1, ||x - y|| / D).
/// Both sequences empty gives 0. Throws PayloadMismatch.
double dist_solution(const Solution& x, const Solution& y, const DistConfig& cfg, const ProblemInstance* inst = nullptr);

/// Energy-style discrepancy between two sample sets of solutions: mean cross
/// distance minus half the summed mean within-set distances (all ordered
/// pairs, self-pairs included), clamped to [0, 1].
double dist_solution_stochastic(std::span<const Solution> xs, std::span<const Solution> ys, const DistConfig& cfg,
                                const ProblemInstance* inst = nullptr);

}  // namespace pstraj
