// Tree traversals, greedy graph walks, shortest-path relaxations and the
// greedy TSP neighbor rules.

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>

#include "pstraj/error.hpp"
#include "pstraj/zoo/zoo.hpp"

namespace pstraj::zoo {

namespace {

struct VisitLog {
  std::vector<std::uint32_t> order;
  std::vector<Solution> steps;
  void visit(std::uint32_t node) {
    order.push_back(node);
    steps.push_back(Solution::perm(order));
  }
};

void push_children(const TreeData& t, std::uint32_t node, ChildOrder order, std::vector<std::uint32_t>& out) {
  const std::int32_t first = order == ChildOrder::LeftFirst ? t.left[node] : t.right[node];
  const std::int32_t second = order == ChildOrder::LeftFirst ? t.right[node] : t.left[node];
  if (first >= 0) out.push_back(static_cast<std::uint32_t>(first));
  if (second >= 0) out.push_back(static_cast<std::uint32_t>(second));
}

void bfs_level(const TreeData& t, const std::vector<std::uint32_t>& frontier, VisitLog& log) {
  if (frontier.empty()) return;
  std::vector<std::uint32_t> next;
  for (auto node : frontier) {
    log.visit(node);
    push_children(t, node, ChildOrder::LeftFirst, next);
  }
  bfs_level(t, next, log);
}

void preorder_visit(const TreeData& t, std::int32_t node, VisitLog& log) {
  if (node < 0) return;
  log.visit(static_cast<std::uint32_t>(node));
  preorder_visit(t, t.left[static_cast<std::size_t>(node)], log);
  preorder_visit(t, t.right[static_cast<std::size_t>(node)], log);
}

using Adjacency = std::vector<std::vector<std::pair<std::uint32_t, double>>>;

Adjacency adjacency(const GraphData& g) {
  Adjacency adj(g.n);
  for (const auto& e : g.edges) {
    adj[e.u].emplace_back(e.v, e.w);
    adj[e.v].emplace_back(e.u, e.w);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

}  // namespace

std::vector<Solution> bfs_queue(const TreeData& tree, std::uint32_t root, ChildOrder order) {
  VisitLog log;
  std::deque<std::uint32_t> queue{root};
  while (!queue.empty()) {
    const auto node = queue.front();
    queue.pop_front();
    log.visit(node);
    std::vector<std::uint32_t> kids;
    push_children(tree, node, order, kids);
    queue.insert(queue.end(), kids.begin(), kids.end());
  }
  return log.steps;
}

std::vector<Solution> bfs_levels_recursive(const TreeData& tree, std::uint32_t root) {
  VisitLog log;
  bfs_level(tree, {root}, log);
  return log.steps;
}

std::vector<Solution> dfs_stack(const TreeData& tree, std::uint32_t root, ChildOrder order) {
  VisitLog log;
  std::vector<std::uint32_t> stack{root};
  while (!stack.empty()) {
    const auto node = stack.back();
    stack.pop_back();
    log.visit(node);
    std::vector<std::uint32_t> kids;
    push_children(tree, node, order, kids);
    // the child expanded first goes on top
    stack.insert(stack.end(), kids.rbegin(), kids.rend());
  }
  return log.steps;
}

std::vector<Solution> dfs_recursive(const TreeData& tree, std::uint32_t root) {
  VisitLog log;
  preorder_visit(tree, static_cast<std::int32_t>(root), log);
  return log.steps;
}

std::vector<Solution> graph_greedy(const GraphData& g, std::uint32_t start, Pick pick) {
  const Adjacency adj = adjacency(g);
  std::vector<bool> seen(g.n, false);
  VisitLog log;
  std::vector<std::uint32_t> path{start};
  seen[start] = true;
  log.visit(start);
  while (!path.empty()) {
    const auto cur = path.back();
    std::optional<std::pair<double, std::uint32_t>> best;
    for (const auto& [v, w] : adj[cur]) {
      if (seen[v]) continue;
      const bool better = !best || (pick == Pick::Min ? w < best->first : w > best->first) ||
                          (w == best->first && v < best->second);
      if (better) best = std::make_pair(w, v);
    }
    if (!best) {
      path.pop_back();
      continue;
    }
    seen[best->second] = true;
    log.visit(best->second);
    path.push_back(best->second);
  }
  return log.steps;
}

double unreached_distance(const GraphData& g) {
  double total = 1.0;
  for (const auto& e : g.edges) total += e.w;
  return total;
}

std::vector<Solution> dijkstra(const GraphData& g, std::uint32_t source) {
  const Adjacency adj = adjacency(g);
  const double far = unreached_distance(g);
  std::vector<double> dist(g.n, far);
  std::vector<bool> settled(g.n, false);
  dist[source] = 0.0;
  std::vector<Solution> steps{Solution::real(dist)};
  for (std::size_t round = 0; round < g.n; ++round) {
    std::optional<std::uint32_t> u;
    for (std::uint32_t v = 0; v < g.n; ++v) {
      if (!settled[v] && (!u || dist[v] < dist[*u])) u = v;
    }
    if (!u || dist[*u] >= far) break;
    settled[*u] = true;
    for (const auto& [v, w] : adj[*u]) {
      if (!settled[v] && dist[*u] + w < dist[v]) dist[v] = dist[*u] + w;
    }
    steps.push_back(Solution::real(dist));
  }
  return steps;
}

std::vector<Solution> bellman_ford(const GraphData& g, std::uint32_t source) {
  const double far = unreached_distance(g);
  std::vector<double> dist(g.n, far);
  dist[source] = 0.0;
  std::vector<Solution> steps{Solution::real(dist)};
  const auto relax = [&](std::uint32_t a, std::uint32_t b, double w) {
    if (dist[a] < far && dist[a] + w < dist[b]) {
      dist[b] = dist[a] + w;
      return true;
    }
    return false;
  };
  for (std::size_t pass = 0; pass + 1 < g.n; ++pass) {
    bool changed = false;
    for (const auto& e : g.edges) {
      changed |= relax(e.u, e.v, e.w);
      changed |= relax(e.v, e.u, e.w);
    }
    if (!changed) break;
    steps.push_back(Solution::real(dist));
  }
  return steps;
}

std::vector<Solution> floyd_slice(const GraphData& g, std::uint32_t source) {
  const double far = unreached_distance(g);
  Matrix d(g.n, g.n, far);
  for (std::size_t i = 0; i < g.n; ++i) d(i, i) = 0.0;
  for (const auto& e : g.edges) {
    d(e.u, e.v) = std::min(d(e.u, e.v), e.w);
    d(e.v, e.u) = std::min(d(e.v, e.u), e.w);
  }
  const auto row = [&] {
    std::vector<double> r(g.n);
    for (std::size_t j = 0; j < g.n; ++j) r[j] = std::min(d(source, j), far);
    return Solution::real(std::move(r));
  };
  std::vector<Solution> steps{row()};
  for (std::size_t k = 0; k < g.n; ++k) {
    for (std::size_t i = 0; i < g.n; ++i) {
      for (std::size_t j = 0; j < g.n; ++j) {
        if (d(i, k) + d(k, j) < d(i, j)) d(i, j) = d(i, k) + d(k, j);
      }
    }
    steps.push_back(row());
  }
  return steps;
}

std::vector<Solution> tsp_greedy_neighbor(const Matrix& dist, std::uint32_t start, Pick pick) {
  const auto n = static_cast<std::uint32_t>(dist.rows);
  if (start >= n) throw Error(Errc::BadStart, "start city out of range");
  std::vector<bool> seen(n, false);
  VisitLog log;
  seen[start] = true;
  log.visit(start);
  std::uint32_t cur = start;
  for (std::uint32_t step = 1; step < n; ++step) {
    std::optional<std::uint32_t> best;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (seen[v]) continue;
      if (!best || (pick == Pick::Min ? dist(cur, v) < dist(cur, *best) : dist(cur, v) > dist(cur, *best))) best = v;
    }
    cur = *best;
    seen[cur] = true;
    log.visit(cur);
  }
  return log.steps;
}

}  // namespace pstraj::zoo
