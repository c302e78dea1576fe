#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pstraj/expr.hpp"
#include "pstraj/types.hpp"

namespace pstraj::zoo {

/// Closed tour length, returning to the first city.
double tour_length(const Matrix& dist, std::span<const std::uint32_t> tour);

/// Exact optimum closed-tour length by the Held-Karp subset recursion.
/// Limited to n <= 20 cities (memory is n * 2^n doubles).
double held_karp(const Matrix& dist);

/// Features of moving from `current` to `candidate` given the still
/// unvisited cities (which include the candidate).
FeatureValues tsp_features(const Matrix& dist, std::uint32_t current, std::uint32_t destination,
                           std::uint32_t candidate, std::span<const std::uint32_t> unvisited);

struct TourResult {
  std::vector<Solution> steps;  // partial routes, one per selected city
  std::vector<std::uint32_t> tour;
};

/// Greedy construction: at each step every unvisited city is scored by the
/// expression and the minimum (lowest id on ties) is visited next.
/// Throws Timeout when the deadline passes.
TourResult construct_tour(const Matrix& dist, std::uint32_t start, const Expr& score,
                          std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt);

}  // namespace pstraj::zoo
