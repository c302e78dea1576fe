#include "pstraj/trajsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pstraj/error.hpp"

namespace pstraj {

std::string_view measure_name(TrajMeasure m) noexcept {
  switch (m) {
    case TrajMeasure::Dtw: return "dtw";
    case TrajMeasure::MeanPairwise: return "mean";
    case TrajMeasure::Erp: return "erp";
    case TrajMeasure::SegmentCosine: return "cosine";
  }
  return "unknown";
}

std::optional<TrajMeasure> parse_measure(std::string_view name) noexcept {
  for (auto m : {TrajMeasure::Dtw, TrajMeasure::MeanPairwise, TrajMeasure::Erp, TrajMeasure::SegmentCosine}) {
    if (measure_name(m) == name) return m;
  }
  return std::nullopt;
}

void validate_config(const TrajSimConfig& cfg) {
  if (!(cfg.truncate_k >= 0.0 && cfg.truncate_k < 1.0)) throw Error(Errc::BadConfig, "truncate_k must lie in [0, 1)");
  if (!(cfg.dist.euclid_bound > 0.0)) throw Error(Errc::BadConfig, "euclid_bound must be positive");
}

PSTraj preprocess(const PSTraj& t, const TrajSimConfig& cfg) {
  validate_config(cfg);
  if (t.steps.empty()) throw Error(Errc::EmptyTrajectory, "cannot preprocess an empty trajectory");
  const auto drop = static_cast<std::size_t>(std::floor(cfg.truncate_k * static_cast<double>(t.size())));
  const std::size_t keep = std::max<std::size_t>(1, t.size() - drop);
  PSTraj out;
  out.meta = t.meta;
  const std::size_t stride = cfg.sample_n + 1;
  for (std::size_t i = 0; i < keep; i += stride) out.steps.push_back(t.steps[i]);
  return out;
}

namespace {

void require_same_kind(std::span<const Solution> x, std::span<const Solution> y) {
  if (!x.empty() && !y.empty() && x.front().kind() != y.front().kind()) {
    throw Error(Errc::PayloadMismatch, std::string(payload_kind_name(x.front().kind())) + " vs " +
                                           std::string(payload_kind_name(y.front().kind())));
  }
}

const std::vector<std::uint32_t>& symbols(const Solution& s) {
  if (const auto* p = std::get_if<PermSeq>(&s.payload)) return p->items;
  return std::get<CatSeq>(s.payload).labels;
}

// Every step is a prefix of the final step.
bool is_prefix_chain(std::span<const Solution> t) {
  const auto& last = symbols(t.back());
  for (const auto& s : t) {
    if (s.kind() != t.back().kind()) return false;
    const auto& v = symbols(s);
    if (v.size() > last.size() || !std::equal(v.begin(), v.end(), last.begin())) return false;
  }
  return true;
}

}  // namespace

Matrix cost_matrix(std::span<const Solution> x, std::span<const Solution> y, const DistConfig& cfg,
                   const ProblemInstance* inst) {
  require_same_kind(x, y);
  Matrix c(x.size(), y.size());
  if (x.empty() || y.empty()) return c;
  if (x.front().kind() != PayloadKind::RealVec && is_prefix_chain(x) && is_prefix_chain(y)) {
    const auto& fx = symbols(x.back());
    const auto& fy = symbols(y.back());
    const auto table = edit_distance_table(fx, fy);
    const std::size_t w = fy.size() + 1;
    const bool hinted = cfg.d_max_rule == DMaxRule::InstanceHint && inst != nullptr && inst->d_max_hint;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const std::size_t li = symbols(x[i]).size();
      for (std::size_t j = 0; j < y.size(); ++j) {
        const std::size_t lj = symbols(y[j]).size();
        if (li == 0 && lj == 0) continue;
        const double d_max = hinted ? *inst->d_max_hint : static_cast<double>(std::max(li, lj));
        c(i, j) = std::min(1.0, static_cast<double>(table[li * w + lj]) / d_max);
      }
    }
    return c;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) c(i, j) = dist_solution(x[i], y[j], cfg, inst);
  }
  return c;
}

double dtw_from_costs(const Matrix& costs) {
  const std::size_t m = costs.rows;
  const std::size_t n = costs.cols;
  if (m == 0 || n == 0) throw Error(Errc::EmptyTrajectory, "DTW needs non-empty trajectories");
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> prev(n, inf);
  std::vector<double> cur(n, inf);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double best;
      if (i == 0 && j == 0) {
        best = 0.0;
      } else {
        best = inf;
        if (i > 0) best = std::min(best, prev[j]);
        if (j > 0) best = std::min(best, cur[j - 1]);
        if (i > 0 && j > 0) best = std::min(best, prev[j - 1]);
      }
      cur[j] = best + costs(i, j);
    }
    std::swap(prev, cur);
  }
  return prev[n - 1];
}

double dtw_distance(std::span<const Solution> x, std::span<const Solution> y, const DistConfig& cfg,
                    const ProblemInstance* inst) {
  return dtw_from_costs(cost_matrix(x, y, cfg, inst));
}

double sim_pstraj(const PSTraj& x, const PSTraj& y, const TrajSimConfig& cfg, const ProblemInstance* inst) {
  const PSTraj px = preprocess(x, cfg);
  const PSTraj py = preprocess(y, cfg);
  const double dtw = dtw_distance(px.steps, py.steps, cfg.dist, inst);
  const double shorter = static_cast<double>(std::min(px.size(), py.size()));
  return std::clamp(1.0 - dtw / shorter, 0.0, 1.0);
}

double mean_pairwise_distance(std::span<const Solution> x, std::span<const Solution> y, const DistConfig& cfg,
                              const ProblemInstance* inst) {
  require_same_kind(x, y);
  const std::size_t len = std::min(x.size(), y.size());
  if (len == 0) throw Error(Errc::EmptyTrajectory, "mean pairwise distance needs non-empty trajectories");
  double sum = 0.0;
  for (std::size_t t = 0; t < len; ++t) sum += dist_solution(x[t], y[t], cfg, inst);
  return sum / static_cast<double>(len);
}

double erp_distance(std::span<const Solution> x, std::span<const Solution> y, const DistConfig& cfg,
                    const std::optional<Solution>& gap_ref, const ProblemInstance* inst) {
  require_same_kind(x, y);
  if (x.empty() && y.empty()) return 0.0;
  const Solution& sample = x.empty() ? y.front() : x.front();
  Solution gap;
  if (gap_ref) {
    gap = *gap_ref;
  } else if (sample.kind() == PayloadKind::RealVec) {
    gap = Solution::real(std::vector<double>(std::get<RealVec>(sample.payload).values.size(), 0.0));
  } else if (sample.kind() == PayloadKind::PermSeq) {
    gap = Solution::perm({});
  } else {
    gap = Solution::cat({});
  }
  std::vector<double> gx(x.size());
  std::vector<double> gy(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) gx[i] = dist_solution(x[i], gap, cfg, inst);
  for (std::size_t j = 0; j < y.size(); ++j) gy[j] = dist_solution(y[j], gap, cfg, inst);
  const Matrix c = cost_matrix(x, y, cfg, inst);

  const std::size_t w = y.size() + 1;
  std::vector<double> e((x.size() + 1) * w, 0.0);
  for (std::size_t j = 1; j < w; ++j) e[j] = e[j - 1] + gy[j - 1];
  for (std::size_t i = 1; i <= x.size(); ++i) {
    e[i * w] = e[(i - 1) * w] + gx[i - 1];
    for (std::size_t j = 1; j < w; ++j) {
      e[i * w + j] = std::min({e[(i - 1) * w + j - 1] + c(i - 1, j - 1), e[(i - 1) * w + j] + gx[i - 1],
                               e[i * w + j - 1] + gy[j - 1]});
    }
  }
  return e.back();
}

double segment_cosine_sim(std::span<const Solution> x, std::span<const Solution> y) {
  require_same_kind(x, y);
  if (x.empty() || y.empty()) throw Error(Errc::TooShort, "segment cosine needs at least two steps");
  if (x.front().kind() != PayloadKind::RealVec) throw Error(Errc::NonVectorPayload, "segment cosine needs real_vec steps");
  if (x.size() < 2 || y.size() < 2) throw Error(Errc::TooShort, "segment cosine needs at least two steps");
  const std::size_t len = std::min(x.size(), y.size());
  double total = 0.0;
  for (std::size_t t = 1; t < len; ++t) {
    const auto& x0 = std::get<RealVec>(x[t - 1].payload).values;
    const auto& x1 = std::get<RealVec>(x[t].payload).values;
    const auto& y0 = std::get<RealVec>(y[t - 1].payload).values;
    const auto& y1 = std::get<RealVec>(y[t].payload).values;
    if (x1.size() != y1.size()) throw Error(Errc::PayloadMismatch, "real_vec dimensions differ");
    double dot = 0.0, nx = 0.0, ny = 0.0;
    for (std::size_t k = 0; k < x1.size(); ++k) {
      const double dx = x1[k] - x0[k];
      const double dy = y1[k] - y0[k];
      dot += dx * dy;
      nx += dx * dx;
      ny += dy * dy;
    }
    if (nx > 0.0 && ny > 0.0) total += std::clamp(dot / (std::sqrt(nx) * std::sqrt(ny)), -1.0, 1.0);
  }
  return total / static_cast<double>(len - 1);
}

double trajectory_similarity(const PSTraj& x, const PSTraj& y, const TrajSimConfig& cfg, const ProblemInstance* inst) {
  if (cfg.measure == TrajMeasure::Dtw) return sim_pstraj(x, y, cfg, inst);
  const PSTraj px = preprocess(x, cfg);
  const PSTraj py = preprocess(y, cfg);
  switch (cfg.measure) {
    case TrajMeasure::MeanPairwise:
      return std::clamp(1.0 - mean_pairwise_distance(px.steps, py.steps, cfg.dist, inst), 0.0, 1.0);
    case TrajMeasure::Erp: {
      const double shorter = static_cast<double>(std::min(px.size(), py.size()));
      return std::clamp(1.0 - erp_distance(px.steps, py.steps, cfg.dist, cfg.erp_gap_ref, inst) / shorter, 0.0, 1.0);
    }
    case TrajMeasure::SegmentCosine: return 0.5 * (1.0 + segment_cosine_sim(px.steps, py.steps));
    case TrajMeasure::Dtw: break;
  }
  return sim_pstraj(x, y, cfg, inst);
}

}  // namespace pstraj
