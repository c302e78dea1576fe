#include "pstraj/soldist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pstraj/error.hpp"

namespace pstraj {

std::size_t edit_distance(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = a[i - 1] == b[j - 1] ? diag : 1 + std::min({diag, up, row[j - 1]});
      diag = up;
    }
  }
  return row[b.size()];
}

std::vector<std::size_t> edit_distance_table(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  const std::size_t w = b.size() + 1;
  std::vector<std::size_t> t((a.size() + 1) * w);
  for (std::size_t j = 0; j < w; ++j) t[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    t[i * w] = i;
    for (std::size_t j = 1; j < w; ++j) {
      t[i * w + j] = a[i - 1] == b[j - 1]
                         ? t[(i - 1) * w + j - 1]
                         : 1 + std::min({t[(i - 1) * w + j - 1], t[(i - 1) * w + j], t[i * w + j - 1]});
    }
  }
  return t;
}

namespace {

const std::vector<std::uint32_t>& symbols(const Solution& s) {
  if (const auto* p = std::get_if<PermSeq>(&s.payload)) return p->items;
  return std::get<CatSeq>(s.payload).labels;
}

double sequence_distance(const std::vector<std::uint32_t>& x, const std::vector<std::uint32_t>& y,
                         const DistConfig& cfg, const ProblemInstance* inst) {
  if (x.empty() && y.empty()) return 0.0;
  const double ed = static_cast<double>(edit_distance(x, y));
  double d_max = static_cast<double>(std::max(x.size(), y.size()));
  if (cfg.d_max_rule == DMaxRule::InstanceHint && inst != nullptr && inst->d_max_hint) d_max = *inst->d_max_hint;
  return std::min(1.0, ed / d_max);
}

}  // namespace

double dist_solution(const Solution& x, const Solution& y, const DistConfig& cfg, const ProblemInstance* inst) {
  if (x.kind() != y.kind()) {
    throw Error(Errc::PayloadMismatch, std::string(payload_kind_name(x.kind())) + " vs " +
                                           std::string(payload_kind_name(y.kind())));
  }
  if (x.kind() != PayloadKind::RealVec) return sequence_distance(symbols(x), symbols(y), cfg, inst);

  const auto& a = std::get<RealVec>(x.payload).values;
  const auto& b = std::get<RealVec>(y.payload).values;
  if (a.size() != b.size()) throw Error(Errc::PayloadMismatch, "real_vec dimensions differ");
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sq += (a[i] - b[i]) * (a[i] - b[i]);
  const double bound = inst != nullptr && inst->d_max_hint ? *inst->d_max_hint : cfg.euclid_bound;
  return std::min(1.0, std::sqrt(sq) / bound);
}

double dist_solution_stochastic(std::span<const Solution> xs, std::span<const Solution> ys, const DistConfig& cfg,
                                const ProblemInstance* inst) {
  if (xs.empty() || ys.empty()) throw Error(Errc::EmptyTrajectory, "sample sets must be non-empty");
  const auto mean_over = [&](std::span<const Solution> p, std::span<const Solution> q) {
    double sum = 0.0;
    for (const auto& a : p) {
      for (const auto& b : q) sum += dist_solution(a, b, cfg, inst);
    }
    return sum / static_cast<double>(p.size() * q.size());
  };
  const double cross = mean_over(xs, ys);
  const double within = mean_over(xs, xs) + mean_over(ys, ys);
  return std::clamp(cross - 0.5 * within, 0.0, 1.0);
}

}  // namespace pstraj
