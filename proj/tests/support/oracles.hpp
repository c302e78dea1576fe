#pragma once

// Deliberately naive reference implementations. They share no code with the
// library and trade every bit of speed for being obviously correct.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pstraj/expr.hpp"
#include "pstraj/types.hpp"

namespace oracle {

using pstraj::Expr;
using pstraj::Matrix;

// Plain recursion over the last symbols, no memo.
inline std::size_t edit_distance(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                 std::size_t i, std::size_t j) {
  if (i == 0) return j;
  if (j == 0) return i;
  const std::size_t sub = edit_distance(a, b, i - 1, j - 1) + (a[i - 1] == b[j - 1] ? 0 : 1);
  const std::size_t del = edit_distance(a, b, i - 1, j) + 1;
  const std::size_t ins = edit_distance(a, b, i, j - 1) + 1;
  return std::min({sub, del, ins});
}

inline std::size_t edit_distance(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  return edit_distance(a, b, a.size(), b.size());
}

// Walks every monotone path from (0,0) to (m-1,n-1) and keeps the cheapest.
inline double dtw_paths(const Matrix& c) {
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t i, std::size_t j, double acc) {
    acc += c(i, j);
    if (i + 1 == c.rows && j + 1 == c.cols) {
      best = std::min(best, acc);
      return;
    }
    if (i + 1 < c.rows) walk(i + 1, j, acc);
    if (j + 1 < c.cols) walk(i, j + 1, acc);
    if (i + 1 < c.rows && j + 1 < c.cols) walk(i + 1, j + 1, acc);
  };
  walk(0, 0, 0.0);
  return best;
}

// Enumerates edit scripts: match x[i] with y[j], gap x[i], or gap y[j].
inline double erp_scripts(const Matrix& cross, const std::vector<double>& gap_x, const std::vector<double>& gap_y) {
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t i, std::size_t j, double acc) {
    if (i == gap_x.size() && j == gap_y.size()) {
      best = std::min(best, acc);
      return;
    }
    if (i < gap_x.size() && j < gap_y.size()) walk(i + 1, j + 1, acc + cross(i, j));
    if (i < gap_x.size()) walk(i + 1, j, acc + gap_x[i]);
    if (j < gap_y.size()) walk(i, j + 1, acc + gap_y[j]);
  };
  walk(0, 0, 0.0);
  return best;
}

// Kendall tau-b by counting every pair.
inline double kendall_tau_b(const std::vector<double>& a, const std::vector<double>& b) {
  double conc = 0, disc = 0, tie_a = 0, tie_b = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const double da = a[i] - a[j];
      const double db = b[i] - b[j];
      if (da == 0 && db == 0) continue;
      if (da == 0) {
        tie_a += 1;
      } else if (db == 0) {
        tie_b += 1;
      } else if ((da > 0) == (db > 0)) {
        conc += 1;
      } else {
        disc += 1;
      }
    }
  }
  return (conc - disc) / std::sqrt((conc + disc + tie_a) * (conc + disc + tie_b));
}

inline std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double less = 0, equal = 0;
    for (double w : v) {
      if (w < v[i]) less += 1;
      if (w == v[i]) equal += 1;
    }
    r[i] = less + (equal + 1) / 2.0;
  }
  return r;
}

inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

// Tree edit distance straight from the forest recursion (rightmost roots),
// with no keyroot bookkeeping.
inline std::string label(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Const: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "c%a", e.value());
      return buf;
    }
    case Expr::Kind::Feature: return std::string(pstraj::feature_name(e.feature_id()));
    case Expr::Kind::Unary: return std::string(pstraj::unary_name(e.unary_op()));
    case Expr::Kind::Binary: return std::string(pstraj::binary_name(e.binary_op()));
  }
  return {};
}

inline std::vector<Expr> children(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Unary: return {e.child()};
    case Expr::Kind::Binary: return {e.left(), e.right()};
    default: return {};
  }
}

inline std::size_t forest_size(const std::vector<Expr>& f) {
  std::size_t n = 0;
  for (const auto& t : f) n += t.size();
  return n;
}

inline std::size_t forest_distance(const std::vector<Expr>& f, const std::vector<Expr>& g) {
  if (f.empty()) return forest_size(g);
  if (g.empty()) return forest_size(f);
  const Expr& v = f.back();
  const Expr& w = g.back();

  // delete v: its children take its place at the right end
  auto f_minus = f;
  f_minus.pop_back();
  for (const auto& c : children(v)) f_minus.push_back(c);
  auto g_minus = g;
  g_minus.pop_back();
  for (const auto& c : children(w)) g_minus.push_back(c);

  auto f_rest = f;
  f_rest.pop_back();
  auto g_rest = g;
  g_rest.pop_back();

  const std::size_t del = forest_distance(f_minus, g) + 1;
  const std::size_t ins = forest_distance(f, g_minus) + 1;
  const std::size_t match = forest_distance(children(v), children(w)) + forest_distance(f_rest, g_rest) +
                            (label(v) == label(w) ? 0 : 1);
  return std::min({del, ins, match});
}

inline std::size_t tree_edit_distance(const Expr& a, const Expr& b) { return forest_distance({a}, {b}); }

// Agglomeration that recomputes every cluster-pair linkage from leaf
// dissimilarities at every step.
struct RefMerge {
  std::size_t left, right;
  double distance;
};

enum class RefLinkage { Average, Complete, Single };

inline std::vector<RefMerge> agglomerate(const Matrix& sim, RefLinkage linkage) {
  const std::size_t n = sim.rows;
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> live;
  for (std::size_t i = 0; i < n; ++i) live.push_back({i, {i}});
  std::vector<RefMerge> out;
  std::size_t next = n;
  while (live.size() > 1) {
    double best = std::numeric_limits<double>::infinity();
    std::pair<std::size_t, std::size_t> best_ids{0, 0};
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < live.size(); ++i) {
      for (std::size_t j = i + 1; j < live.size(); ++j) {
        double sum = 0, mx = 0, mn = std::numeric_limits<double>::infinity();
        for (auto p : live[i].second) {
          for (auto q : live[j].second) {
            const double d = 1.0 - sim(p, q);
            sum += d;
            mx = std::max(mx, d);
            mn = std::min(mn, d);
          }
        }
        const double link = linkage == RefLinkage::Average
                                ? sum / static_cast<double>(live[i].second.size() * live[j].second.size())
                                : (linkage == RefLinkage::Complete ? mx : mn);
        auto ids = std::minmax(live[i].first, live[j].first);
        const std::pair<std::size_t, std::size_t> key{ids.first, ids.second};
        if (link < best - 1e-12 || (std::abs(link - best) <= 1e-12 && key < best_ids)) {
          best = link;
          best_ids = key;
          bi = i;
          bj = j;
        }
      }
    }
    out.push_back({best_ids.first, best_ids.second, best});
    auto merged = live[bi].second;
    merged.insert(merged.end(), live[bj].second.begin(), live[bj].second.end());
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(bj));
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(bi));
    live.push_back({next++, merged});
  }
  return out;
}

// Closed-tour optimum by trying every tour that starts at city 0.
inline double tsp_brute_force(const Matrix& d) {
  std::vector<std::uint32_t> rest(d.rows - 1);
  std::iota(rest.begin(), rest.end(), 1u);
  double best = std::numeric_limits<double>::infinity();
  do {
    double len = d(0, rest.front());
    for (std::size_t i = 0; i + 1 < rest.size(); ++i) len += d(rest[i], rest[i + 1]);
    len += d(rest.back(), 0);
    best = std::min(best, len);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return best;
}

}  // namespace oracle
