#include "pstraj/fixtures.hpp"

#include <cmath>
#include <numeric>
#include <set>

#include "pstraj/error.hpp"
#include "pstraj/rng.hpp"
#include "pstraj/zoo/tsp.hpp"
#include "pstraj/zoo/zoo.hpp"

namespace pstraj {

void InstanceRegistry::add(ProblemInstance inst) {
  validate_instance(inst);
  if (items_.count(inst.id) != 0) throw Error(Errc::BadInstanceData, "duplicate instance id '" + inst.id + "'");
  if (inst.task == Task::Tsp) {
    const auto& dist = std::get<TspData>(inst.data).dist;
    if (dist.rows <= 15) optima_[inst.id] = zoo::held_karp(dist);
  }
  order_.push_back(inst.id);
  std::string id = inst.id;
  items_.emplace(std::move(id), std::move(inst));
}

bool InstanceRegistry::contains(std::string_view id) const { return items_.find(id) != items_.end(); }

const ProblemInstance& InstanceRegistry::get(std::string_view id) const {
  const auto it = items_.find(id);
  if (it == items_.end()) throw Error(Errc::UnknownInstance, "unknown instance '" + std::string(id) + "'");
  return it->second;
}

double InstanceRegistry::tsp_optimum(std::string_view id) const {
  const auto& inst = get(id);
  const auto it = optima_.find(id);
  if (it != optima_.end()) return it->second;
  if (inst.task != Task::Tsp) throw Error(Errc::BadInstanceData, "instance '" + inst.id + "' is not a tsp instance");
  throw Error(Errc::BadInstanceData, "instance '" + inst.id + "' is too large for an exact optimum");
}

std::vector<std::string> InstanceRegistry::ids(std::string_view prefix) const {
  std::vector<std::string> out;
  for (const auto& id : order_) {
    if (id.compare(0, prefix.size(), prefix) == 0) out.push_back(id);
  }
  return out;
}

namespace fixtures {

namespace {

StartPoint node(std::string id, std::uint32_t v) { return {std::move(id), v}; }

}  // namespace

ProblemInstance random_tsp(std::string id, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  TspData d;
  d.coords.resize(n);
  for (auto& c : d.coords) c = {rng.uniform(), rng.uniform()};
  d.dist = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = std::hypot(d.coords[i][0] - d.coords[j][0], d.coords[i][1] - d.coords[j][1]);
      d.dist(i, j) = v;
      d.dist(j, i) = v;
    }
  }
  return {std::move(id), Task::Tsp, std::move(d), {node("0", 0)}, std::nullopt};
}

ProblemInstance random_sort(std::string id, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  SortData d;
  d.values.resize(n);
  std::iota(d.values.begin(), d.values.end(), 0U);
  rng.shuffle(d.values);
  return {std::move(id), Task::Sort, std::move(d), {node("0", 0)}, std::nullopt};
}

ProblemInstance random_tree(std::string id, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  TreeData t;
  t.left.assign(n, -1);
  t.right.assign(n, -1);
  // free child slots as (node, is_right)
  std::vector<std::pair<std::size_t, bool>> slots = {{0, false}, {0, true}};
  for (std::size_t v = 1; v < n; ++v) {
    const std::size_t pick = rng.below(slots.size());
    const auto [parent, right] = slots[pick];
    slots.erase(slots.begin() + static_cast<std::ptrdiff_t>(pick));
    (right ? t.right : t.left)[parent] = static_cast<std::int32_t>(v);
    slots.emplace_back(v, false);
    slots.emplace_back(v, true);
  }
  return {std::move(id), Task::TreeTraversal, std::move(t), {node("0", 0)}, std::nullopt};
}

GraphData random_graph(std::size_t n, std::size_t extra, std::uint64_t seed) {
  Rng rng(seed);
  GraphData g;
  g.n = n;
  std::set<std::pair<std::uint32_t, std::uint32_t>> used;
  const auto weight = [&] { return static_cast<double>(rng.below(20) + 1); };
  for (std::uint32_t v = 1; v < n; ++v) {
    const auto u = static_cast<std::uint32_t>(rng.below(v));
    used.emplace(u, v);
    g.edges.push_back({u, v, weight()});
  }
  const std::size_t max_edges = n * (n - 1) / 2;
  while (g.edges.size() < std::min(max_edges, n - 1 + extra)) {
    auto u = static_cast<std::uint32_t>(rng.below(n));
    auto v = static_cast<std::uint32_t>(rng.below(n));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (!used.emplace(u, v).second) continue;
    g.edges.push_back({u, v, weight()});
  }
  return g;
}

ProblemInstance random_binpacking(std::string id, std::size_t items, std::uint64_t seed) {
  Rng rng(seed);
  BinPackingData b;
  b.capacity = 100.0;
  for (std::size_t i = 0; i < items; ++i) b.items.push_back(static_cast<double>(5 + rng.below(36)));
  return {std::move(id), Task::BinPacking, std::move(b), {node("0", 0)}, std::nullopt};
}

ProblemInstance random_matmul(std::string id, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  MatMulData m{Matrix(n, n), Matrix(n, n)};
  for (auto& v : m.a.data) v = static_cast<double>(1 + rng.below(9));
  for (auto& v : m.b.data) v = static_cast<double>(1 + rng.below(9));
  double frob = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += m.a(i, k) * m.b(k, j);
      frob += s * s;
    }
  }
  return {std::move(id), Task::MatMul, std::move(m), {node("0", 0)}, std::sqrt(frob)};
}

ProblemInstance rosenbrock_instance() {
  ProblemInstance p;
  p.id = "rosenbrock";
  p.task = Task::Rosenbrock;
  p.data = RosenbrockData{};
  p.start_points = {{"a", std::vector<double>{-1.2, 1.0}}, {"b", std::vector<double>{0.5, -0.5}}};
  // diagonal of the start box
  p.d_max_hint = 4.0 * std::sqrt(2.0);
  return p;
}

std::vector<ProblemInstance> builtin_instances() {
  std::vector<ProblemInstance> out;
  for (std::uint64_t i = 0; i < 5; ++i) out.push_back(random_tsp("tsp20_" + std::to_string(i), 20, 1000 + i));
  for (std::uint64_t i = 0; i < 5; ++i) out.push_back(random_tsp("tsp12_" + std::to_string(i), 12, 1200 + i));
  for (std::uint64_t i = 0; i < 5; ++i) out.push_back(random_sort("sort_" + std::to_string(i), 10, 2000 + i));
  for (std::uint64_t i = 0; i < 3; ++i) out.push_back(random_tree("tree_" + std::to_string(i), 15, 3000 + i));
  for (std::uint64_t i = 0; i < 3; ++i) {
    GraphData g = random_graph(12, 8, 4000 + i);
    const std::string k = std::to_string(i);
    out.push_back({"graph_" + k, Task::GraphTraversal, g, {node("0", 0)}, std::nullopt});
    // tentative-distance vectors live in [0, unreached]^n
    const double bound = zoo::unreached_distance(g) * std::sqrt(static_cast<double>(g.n));
    out.push_back({"sp_" + k, Task::ShortestPath, std::move(g), {node("0", 0)}, bound});
  }
  for (std::uint64_t i = 0; i < 3; ++i) out.push_back(random_binpacking("binpack_" + std::to_string(i), 30, 5000 + i));
  for (std::uint64_t i = 0; i < 2; ++i) out.push_back(random_matmul("matmul_" + std::to_string(i), 4, 6000 + i));
  out.push_back(rosenbrock_instance());
  return out;
}

const InstanceRegistry& builtin_registry() {
  static const InstanceRegistry reg = [] {
    InstanceRegistry r;
    for (auto& inst : builtin_instances()) r.add(std::move(inst));
    return r;
  }();
  return reg;
}

std::string_view default_prefix(Task task) noexcept {
  switch (task) {
    case Task::Tsp: return "tsp20_";
    case Task::Sort: return "sort_";
    case Task::TreeTraversal: return "tree_";
    case Task::GraphTraversal: return "graph_";
    case Task::ShortestPath: return "sp_";
    case Task::BinPacking: return "binpack_";
    case Task::MatMul: return "matmul_";
    case Task::Rosenbrock: return "rosenbrock";
  }
  return "";
}

}  // namespace fixtures

}  // namespace pstraj
