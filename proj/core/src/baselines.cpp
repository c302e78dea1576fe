#include "pstraj/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "pstraj/error.hpp"

namespace pstraj {

namespace {

using Gram = std::vector<std::string>;

std::map<Gram, std::size_t> count_grams(std::span<const std::string> t, std::size_t n) {
  std::map<Gram, std::size_t> counts;
  for (std::size_t i = 0; i + n <= t.size(); ++i) ++counts[Gram(t.begin() + static_cast<std::ptrdiff_t>(i), t.begin() + static_cast<std::ptrdiff_t>(i + n))];
  return counts;
}

// Geometric mean of clipped precisions of `cand` against `ref`.
double directed(std::span<const std::string> cand, std::span<const std::string> ref, std::size_t top) {
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= top; ++n) {
    const auto c = count_grams(cand, n);
    const auto r = count_grams(ref, n);
    std::size_t matched = 0;
    std::size_t total = 0;
    for (const auto& [gram, k] : c) {
      total += k;
      const auto it = r.find(gram);
      if (it != r.end()) matched += std::min(k, it->second);
    }
    if (matched == 0) return 0.0;
    log_sum += std::log(static_cast<double>(matched) / static_cast<double>(total));
  }
  return std::exp(log_sum / static_cast<double>(top));
}

}  // namespace

double ngram_sim(std::span<const std::string> a, std::span<const std::string> b, std::size_t max_n) {
  if (a.empty() || b.empty()) throw Error(Errc::EmptyStream, "ngram_sim needs two non-empty token streams");
  if (std::equal(a.begin(), a.end(), b.begin(), b.end())) return 1.0;
  const std::size_t top = std::max<std::size_t>(1, std::min({max_n, a.size(), b.size()}));
  return 0.5 * (directed(a, b, top) + directed(b, a, top));
}

double ngram_sim(const AlgorithmSpec& a, const AlgorithmSpec& b, std::size_t max_n) {
  const auto ta = tokenize(a.display_text);
  const auto tb = tokenize(b.display_text);
  return ngram_sim(ta, tb, max_n);
}

namespace {

// Postorder view of an Expr for Zhang-Shasha.
struct Flat {
  std::vector<std::string> label;
  std::vector<std::size_t> leftmost;  // postorder index of the leftmost leaf
  std::vector<std::size_t> keyroots;
};

std::string node_label(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Const: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "const %.17g", e.value());
      return buf;
    }
    case Expr::Kind::Feature: return "feat " + std::string(feature_name(e.feature_id()));
    case Expr::Kind::Unary: return std::string(unary_name(e.unary_op()));
    case Expr::Kind::Binary: return std::string(binary_name(e.binary_op()));
  }
  return {};
}

std::size_t flatten(const Expr& e, Flat& f) {
  std::size_t lm = 0;
  bool first = true;
  const auto visit = [&](const Expr& c) {
    const std::size_t child = flatten(c, f);
    if (first) lm = f.leftmost[child];
    first = false;
  };
  if (e.kind() == Expr::Kind::Unary) visit(e.child());
  if (e.kind() == Expr::Kind::Binary) {
    visit(e.left());
    visit(e.right());
  }
  const std::size_t me = f.label.size();
  f.label.push_back(node_label(e));
  f.leftmost.push_back(first ? me : lm);
  return me;
}

Flat flat(const Expr& e) {
  Flat f;
  flatten(e, f);
  // keyroots: the highest node for each distinct leftmost leaf
  const std::size_t n = f.label.size();
  std::vector<bool> seen(n, false);
  for (std::size_t i = n; i-- > 0;) {
    if (!seen[f.leftmost[i]]) {
      seen[f.leftmost[i]] = true;
      f.keyroots.push_back(i);
    }
  }
  std::sort(f.keyroots.begin(), f.keyroots.end());
  return f;
}

}  // namespace

std::size_t tree_edit_distance(const Expr& a, const Expr& b) {
  const Flat x = flat(a);
  const Flat y = flat(b);
  const std::size_t n = x.label.size();
  const std::size_t m = y.label.size();
  std::vector<std::size_t> td(n * m, 0);
  std::vector<std::size_t> fd((n + 1) * (m + 1), 0);
  for (std::size_t i : x.keyroots) {
    for (std::size_t j : y.keyroots) {
      const std::size_t li = x.leftmost[i];
      const std::size_t lj = y.leftmost[j];
      const std::size_t rows = i - li + 2;
      const std::size_t cols = j - lj + 2;
      // fd over forests x[li..di] and y[lj..dj], offset by one for the empty forest
      const auto at = [&](std::size_t r, std::size_t c) -> std::size_t& { return fd[r * (m + 1) + c]; };
      at(0, 0) = 0;
      for (std::size_t r = 1; r < rows; ++r) at(r, 0) = at(r - 1, 0) + 1;
      for (std::size_t c = 1; c < cols; ++c) at(0, c) = at(0, c - 1) + 1;
      for (std::size_t r = 1; r < rows; ++r) {
        for (std::size_t c = 1; c < cols; ++c) {
          const std::size_t di = li + r - 1;
          const std::size_t dj = lj + c - 1;
          const std::size_t del = at(r - 1, c) + 1;
          const std::size_t ins = at(r, c - 1) + 1;
          if (x.leftmost[di] == li && y.leftmost[dj] == lj) {
            const std::size_t rel = at(r - 1, c - 1) + (x.label[di] == y.label[dj] ? 0 : 1);
            at(r, c) = std::min({del, ins, rel});
            td[di * m + dj] = at(r, c);
          } else {
            const std::size_t pr = x.leftmost[di] - li;
            const std::size_t pc = y.leftmost[dj] - lj;
            at(r, c) = std::min({del, ins, at(pr, pc) + td[di * m + dj]});
          }
        }
      }
    }
  }
  return td[(n - 1) * m + (m - 1)];
}

double tree_edit_sim(const Expr& a, const Expr& b) {
  const double bound = static_cast<double>(std::max(a.size(), b.size()));
  return 1.0 - static_cast<double>(tree_edit_distance(a, b)) / bound;
}

double tree_edit_sim(const AlgorithmSpec& a, const AlgorithmSpec& b) { return tree_edit_sim(a.expr(), b.expr()); }

}  // namespace pstraj
