#include "pstraj/cluster.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <numeric>

#include "pstraj/behavesim.hpp"
#include "pstraj/error.hpp"

namespace pstraj {

std::string_view linkage_name(Linkage l) noexcept {
  switch (l) {
    case Linkage::Average: return "average";
    case Linkage::Complete: return "complete";
    case Linkage::Single: return "single";
  }
  return "unknown";
}

std::optional<Linkage> parse_linkage(std::string_view name) noexcept {
  for (auto l : {Linkage::Average, Linkage::Complete, Linkage::Single}) {
    if (linkage_name(l) == name) return l;
  }
  return std::nullopt;
}

Dendrogram agglomerate(const Matrix& sim, Linkage linkage, std::vector<std::string> leaves) {
  const std::size_t n = sim.rows;
  if (sim.cols != n || n == 0) throw Error(Errc::BadMatrix, "similarity matrix must be square and non-empty");
  for (std::size_t i = 0; i < n; ++i) {
    if (sim(i, i) != 1.0) throw Error(Errc::BadMatrix, "diagonal entry " + std::to_string(i) + " is not 1");
    for (std::size_t j = 0; j < n; ++j) {
      if (!(sim(i, j) >= 0.0 && sim(i, j) <= 1.0)) throw Error(Errc::BadMatrix, "entry outside [0, 1]");
      if (sim(i, j) != sim(j, i)) throw Error(Errc::BadMatrix, "matrix is not symmetric");
    }
  }
  if (leaves.empty()) {
    for (std::size_t i = 0; i < n; ++i) leaves.push_back(std::to_string(i));
  }
  if (leaves.size() != n) throw Error(Errc::BadMatrix, "leaf label count differs from matrix size");

  const std::size_t total = 2 * n - 1;
  Matrix d(total, total);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d(i, j) = 1.0 - sim(i, j);
  }
  std::vector<std::size_t> members(total, 1);
  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), std::size_t{0});

  Dendrogram out;
  out.leaves = std::move(leaves);
  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t ba = 0;
    std::size_t bb = 0;
    double best = 0.0;
    bool found = false;
    // active stays sorted, so the first strict minimum has the smallest id pair
    for (std::size_t x = 0; x < active.size(); ++x) {
      for (std::size_t y = x + 1; y < active.size(); ++y) {
        const double v = d(active[x], active[y]);
        if (!found || v < best) {
          found = true;
          best = v;
          ba = active[x];
          bb = active[y];
        }
      }
    }
    const std::size_t node = n + step;
    out.merges.push_back({ba, bb, best, node});
    members[node] = members[ba] + members[bb];
    std::erase(active, ba);
    std::erase(active, bb);
    for (std::size_t k : active) {
      double v = 0.0;
      switch (linkage) {
        case Linkage::Average:
          v = (static_cast<double>(members[ba]) * d(k, ba) + static_cast<double>(members[bb]) * d(k, bb)) /
              static_cast<double>(members[node]);
          break;
        case Linkage::Complete: v = std::max(d(k, ba), d(k, bb)); break;
        case Linkage::Single: v = std::min(d(k, ba), d(k, bb)); break;
      }
      d(k, node) = v;
      d(node, k) = v;
    }
    active.push_back(node);
  }
  return out;
}

std::vector<std::vector<std::size_t>> cut_k(const Dendrogram& d, std::size_t k) {
  const std::size_t n = d.leaves.size();
  if (k < 1 || k > n) throw Error(Errc::BadK, "k must lie in [1, " + std::to_string(n) + "]");
  std::vector<std::size_t> parent(2 * n - 1);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  const auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  for (std::size_t m = 0; m < n - k; ++m) {
    const auto& mg = d.merges[m];
    parent[root(mg.left)] = mg.node;
    parent[root(mg.right)] = mg.node;
  }
  std::vector<std::vector<std::size_t>> clusters;
  std::vector<std::size_t> slot(2 * n - 1, SIZE_MAX);
  for (std::size_t leaf = 0; leaf < n; ++leaf) {
    const std::size_t r = root(leaf);
    if (slot[r] == SIZE_MAX) {
      slot[r] = clusters.size();
      clusters.emplace_back();
    }
    clusters[slot[r]].push_back(leaf);
  }
  return clusters;
}

double intra_island_distance(std::span<const std::vector<PSTraj>> members, const TrajSimConfig& cfg,
                             const InstanceRegistry* reg) {
  if (members.size() < 2) throw Error(Errc::TooFewMembers, "intra-island distance needs at least 2 members");
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      sum += 1.0 - behave_sim_traj(members[i], members[j], cfg, reg);
      ++count;
    }
  }
  return sum / static_cast<double>(count);
}

double inter_island_distance(std::span<const std::vector<PSTraj>> a, std::span<const std::vector<PSTraj>> b,
                             const TrajSimConfig& cfg, const InstanceRegistry* reg) {
  if (a.empty() || b.empty()) throw Error(Errc::EmptyIsland, "inter-island distance needs two non-empty islands");
  double sum = 0.0;
  for (const auto& x : a) {
    for (const auto& y : b) sum += 1.0 - behave_sim_traj(x, y, cfg, reg);
  }
  return sum / static_cast<double>(a.size() * b.size());
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw Error(Errc::DegenerateConstantInput, "rank correlation of a constant list");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace

double rank_correlation(std::span<const double> a, std::span<const double> b, RankMethod method) {
  if (a.size() != b.size()) throw Error(Errc::LengthMismatch, "rank correlation of lists with different lengths");
  if (a.size() < 2) throw Error(Errc::LengthMismatch, "rank correlation needs at least 2 entries");
  if (method == RankMethod::Spearman) return pearson(average_ranks(a), average_ranks(b));
  long long concordant = 0, discordant = 0, ties_a = 0, ties_b = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const double da = a[i] - a[j];
      const double db = b[i] - b[j];
      if (da == 0.0 && db == 0.0) continue;
      if (da == 0.0) {
        ++ties_a;
      } else if (db == 0.0) {
        ++ties_b;
      } else if ((da > 0.0) == (db > 0.0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const double left = static_cast<double>(concordant + discordant + ties_a);
  const double right = static_cast<double>(concordant + discordant + ties_b);
  if (left == 0.0 || right == 0.0) throw Error(Errc::DegenerateConstantInput, "rank correlation of a constant list");
  return std::clamp(static_cast<double>(concordant - discordant) / std::sqrt(left * right), -1.0, 1.0);
}

Json to_json(const Dendrogram& d) {
  Json merges = Json::array();
  for (const auto& m : d.merges) {
    merges.push_back({{"left", m.left}, {"right", m.right}, {"distance", m.distance}, {"node", m.node}});
  }
  return {{"leaves", d.leaves}, {"merges", std::move(merges)}};
}

Dendrogram dendrogram_from_json(const Json& j) {
  try {
    Dendrogram d;
    d.leaves = j.at("leaves").get<std::vector<std::string>>();
    for (const auto& m : j.at("merges")) {
      d.merges.push_back({m.at("left").get<std::size_t>(), m.at("right").get<std::size_t>(),
                          m.at("distance").get<double>(), m.at("node").get<std::size_t>()});
    }
    if (d.merges.size() + 1 != d.leaves.size()) throw Error(Errc::ParseFailure, "dendrogram needs |leaves| - 1 merges");
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseFailure, std::string("bad dendrogram JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Newick

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote_label(const std::string& s) {
  const bool plain = !s.empty() && s.find_first_of(" \t\n()[]':;,") == std::string::npos;
  if (plain) return s;
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

}  // namespace

std::string to_newick(const Dendrogram& d) {
  const std::size_t n = d.leaves.size();
  if (n == 0) return ";";
  std::vector<double> height(2 * n - 1, 0.0);
  std::vector<std::pair<std::size_t, std::size_t>> kids(2 * n - 1);
  for (const auto& m : d.merges) {
    height[m.node] = m.distance;
    kids[m.node] = {m.left, m.right};
  }
  const std::size_t root = d.merges.empty() ? 0 : d.merges.back().node;
  std::string out;
  const auto write = [&](auto&& self, std::size_t node, std::optional<std::size_t> parent) -> void {
    if (node < n) {
      out += quote_label(d.leaves[node]);
    } else {
      out += "(";
      self(self, kids[node].first, node);
      out += ",";
      self(self, kids[node].second, node);
      out += ")";
    }
    if (parent) out += ":" + fmt(height[*parent] - height[node]);
    out += "[&id=" + std::to_string(node) + ",height=" + fmt(height[node]) + "]";
  };
  write(write, root, std::nullopt);
  return out + ";";
}

namespace {

struct ParsedNode {
  std::string label;
  std::vector<std::size_t> children;
  std::optional<double> length;
  std::optional<std::size_t> id;
  std::optional<double> height;
};

class NewickParser {
 public:
  explicit NewickParser(std::string_view s) : s_(s) {}

  std::vector<ParsedNode> parse() {
    skip_ws();
    node();
    skip_ws();
    if (peek() != ';') fail("expected ';'");
    ++pos_;
    skip_ws();
    if (pos_ != s_.size()) fail("trailing text after ';'");
    return std::move(nodes_);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::ParseFailure, "newick: " + what + " at offset " + std::to_string(pos_));
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::size_t node() {
    ParsedNode p;
    skip_ws();
    if (peek() == '(') {
      ++pos_;
      if (++depth_ > 512) fail("nesting too deep");
      p.children.push_back(node());
      skip_ws();
      while (peek() == ',') {
        ++pos_;
        p.children.push_back(node());
        skip_ws();
      }
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      --depth_;
    }
    skip_ws();
    p.label = label();
    for (;;) {
      skip_ws();
      if (peek() == '[') {
        comment(p);
      } else if (peek() == ':') {
        ++pos_;
        skip_ws();
        p.length = number();
      } else {
        break;
      }
    }
    nodes_.push_back(std::move(p));
    return nodes_.size() - 1;
  }

  std::string label() {
    std::string out;
    if (peek() == '\'') {
      ++pos_;
      for (;;) {
        if (pos_ >= s_.size()) fail("unterminated quoted label");
        if (s_[pos_] == '\'') {
          if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '\'') {
            out += '\'';
            pos_ += 2;
            continue;
          }
          ++pos_;
          break;
        }
        out += s_[pos_++];
      }
      return out;
    }
    while (pos_ < s_.size() && std::string_view("()[]':;, \t\n").find(s_[pos_]) == std::string_view::npos) {
      out += s_[pos_++];
    }
    return out;
  }

  double number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::string_view("0123456789+-.eE").find(s_[pos_]) != std::string_view::npos) ++pos_;
    const std::string text(s_.substr(start, pos_ - start));
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) fail("bad number '" + text + "'");
    return v;
  }

  void comment(ParsedNode& p) {
    const std::size_t close = s_.find(']', pos_);
    if (close == std::string_view::npos) fail("unterminated comment");
    std::string_view body = s_.substr(pos_ + 1, close - pos_ - 1);
    pos_ = close + 1;
    if (body.empty() || body.front() != '&') return;
    body.remove_prefix(1);
    while (!body.empty()) {
      const std::size_t comma = body.find(',');
      const std::string_view item = comma == std::string_view::npos ? body : body.substr(0, comma);
      const std::size_t eq = item.find('=');
      if (eq != std::string_view::npos) {
        const std::string key(item.substr(0, eq));
        const std::string val(item.substr(eq + 1));
        char* end = nullptr;
        if (key == "id") {
          const unsigned long long v = std::strtoull(val.c_str(), &end, 10);
          if (end != val.c_str() + val.size()) fail("bad id");
          p.id = static_cast<std::size_t>(v);
        } else if (key == "height") {
          const double v = std::strtod(val.c_str(), &end);
          if (end != val.c_str() + val.size()) fail("bad height");
          p.height = v;
        }
      }
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
  std::vector<ParsedNode> nodes_;
};

}  // namespace

Dendrogram parse_newick(std::string_view text) {
  auto nodes = NewickParser(text).parse();
  std::vector<std::size_t> leaves_in_order;
  std::vector<std::size_t> internals;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].children.empty()) {
      leaves_in_order.push_back(i);
    } else {
      if (nodes[i].children.size() != 2) throw Error(Errc::ParseFailure, "newick: dendrogram nodes must be binary");
      internals.push_back(i);
    }
  }
  const std::size_t n = leaves_in_order.size();
  const bool tagged = std::all_of(nodes.begin(), nodes.end(), [](const ParsedNode& p) { return p.id && p.height; });

  std::vector<double> height(nodes.size(), 0.0);
  std::vector<std::size_t> id(nodes.size(), 0);
  if (tagged) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      height[i] = *nodes[i].height;
      id[i] = *nodes[i].id;
    }
  } else {
    // heights from the leaves up, then ids by (height, postorder)
    for (std::size_t i : internals) {
      const auto& c = nodes[i].children;
      double h = 0.0;
      for (std::size_t k : c) h = std::max(h, height[k] + nodes[k].length.value_or(0.0));
      height[i] = h;
    }
    for (std::size_t k = 0; k < n; ++k) id[leaves_in_order[k]] = k;
    auto order = internals;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return height[a] < height[b]; });
    for (std::size_t k = 0; k < order.size(); ++k) id[order[k]] = n + k;
  }

  Dendrogram d;
  d.leaves.resize(n);
  std::vector<bool> seen(n == 0 ? 0 : 2 * n - 1, false);
  for (std::size_t i : leaves_in_order) {
    if (id[i] >= n || seen[id[i]]) throw Error(Errc::ParseFailure, "newick: bad leaf ids");
    seen[id[i]] = true;
    d.leaves[id[i]] = nodes[i].label;
  }
  for (std::size_t i : internals) {
    const auto& c = nodes[i].children;
    if (id[i] < n || id[i] >= 2 * n - 1 || seen[id[i]]) throw Error(Errc::ParseFailure, "newick: bad internal ids");
    seen[id[i]] = true;
    d.merges.push_back({std::min(id[c[0]], id[c[1]]), std::max(id[c[0]], id[c[1]]), height[i], id[i]});
  }
  std::sort(d.merges.begin(), d.merges.end(), [](const Merge& a, const Merge& b) { return a.node < b.node; });
  return d;
}

}  // namespace pstraj
