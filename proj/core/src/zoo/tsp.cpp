#include "pstraj/zoo/tsp.hpp"

#include <algorithm>
#include <limits>

#include "pstraj/error.hpp"

namespace pstraj::zoo {

double tour_length(const Matrix& dist, std::span<const std::uint32_t> tour) {
  if (tour.size() < 2) return 0.0;
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < tour.size(); ++i) len += dist(tour[i], tour[i + 1]);
  return len + dist(tour.back(), tour.front());
}

double held_karp(const Matrix& dist) {
  const std::size_t n = dist.rows;
  if (n > 20) throw Error(Errc::BadInstanceData, "held_karp is limited to 20 cities");
  if (n <= 1) return 0.0;
  if (n == 2) return 2.0 * dist(0, 1);
  // Subsets over cities 1..n-1; city 0 is the fixed start.
  const std::size_t m = n - 1;
  const std::size_t full = std::size_t{1} << m;
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> cost(full * m, inf);
  for (std::size_t k = 0; k < m; ++k) cost[(std::size_t{1} << k) * m + k] = dist(0, k + 1);
  for (std::size_t set = 1; set < full; ++set) {
    for (std::size_t last = 0; last < m; ++last) {
      if (!(set & (std::size_t{1} << last))) continue;
      const double base = cost[set * m + last];
      if (base == inf) continue;
      for (std::size_t next = 0; next < m; ++next) {
        if (set & (std::size_t{1} << next)) continue;
        const std::size_t grown = set | (std::size_t{1} << next);
        const double c = base + dist(last + 1, next + 1);
        if (c < cost[grown * m + next]) cost[grown * m + next] = c;
      }
    }
  }
  double best = inf;
  for (std::size_t last = 0; last < m; ++last) {
    best = std::min(best, cost[(full - 1) * m + last] + dist(last + 1, 0));
  }
  return best;
}

FeatureValues tsp_features(const Matrix& dist, std::uint32_t current, std::uint32_t destination,
                           std::uint32_t candidate, std::span<const std::uint32_t> unvisited) {
  double sum = 0.0;
  double nearest = 0.0;
  std::size_t others = 0;
  for (auto v : unvisited) {
    if (v == candidate) continue;
    const double d = dist(candidate, v);
    nearest = others == 0 ? d : std::min(nearest, d);
    sum += d;
    ++others;
  }
  FeatureValues f;
  f[static_cast<std::size_t>(FeatureId::DistToCurrent)] = dist(current, candidate);
  f[static_cast<std::size_t>(FeatureId::DistToDestination)] = dist(candidate, destination);
  f[static_cast<std::size_t>(FeatureId::MeanDistToUnvisited)] = others == 0 ? 0.0 : sum / static_cast<double>(others);
  f[static_cast<std::size_t>(FeatureId::MinDistToUnvisited)] = nearest;
  f[static_cast<std::size_t>(FeatureId::RemainingCount)] = static_cast<double>(unvisited.size());
  f[static_cast<std::size_t>(FeatureId::DistCurrentToDestination)] = dist(current, destination);
  return f;
}

TourResult construct_tour(const Matrix& dist, std::uint32_t start, const Expr& score,
                          std::optional<std::chrono::steady_clock::time_point> deadline) {
  const auto n = static_cast<std::uint32_t>(dist.rows);
  if (start >= n) throw Error(Errc::BadStart, "start city out of range");
  TourResult r;
  r.tour.push_back(start);
  r.steps.push_back(Solution::perm(r.tour));
  std::vector<std::uint32_t> unvisited;
  for (std::uint32_t c = 0; c < n; ++c) {
    if (c != start) unvisited.push_back(c);
  }
  std::uint32_t current = start;
  while (!unvisited.empty()) {
    if (deadline && std::chrono::steady_clock::now() > *deadline) {
      throw Error(Errc::Timeout, "tour construction exceeded its time budget");
    }
    std::size_t best_pos = 0;
    double best_score = 0.0;
    for (std::size_t i = 0; i < unvisited.size(); ++i) {
      const double s = expr_eval(score, tsp_features(dist, current, start, unvisited[i], unvisited));
      if (i == 0 || s < best_score) {
        best_score = s;
        best_pos = i;
      }
    }
    current = unvisited[best_pos];
    unvisited.erase(unvisited.begin() + static_cast<std::ptrdiff_t>(best_pos));
    r.tour.push_back(current);
    r.steps.push_back(Solution::perm(r.tour));
  }
  return r;
}

}  // namespace pstraj::zoo
