#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pstraj/types.hpp"

namespace pstraj {

/// Instances by id, validated on insertion. Tsp instances of up to 15
/// cities get their Held-Karp optimum cached.
class InstanceRegistry {
 public:
  void add(ProblemInstance inst);
  [[nodiscard]] bool contains(std::string_view id) const;
  /// Throws UnknownInstance.
  [[nodiscard]] const ProblemInstance& get(std::string_view id) const;
  /// Throws UnknownInstance, or BadInstanceData for non-Tsp / too-large instances.
  [[nodiscard]] double tsp_optimum(std::string_view id) const;
  /// Ids in insertion order, optionally restricted to a prefix.
  [[nodiscard]] std::vector<std::string> ids(std::string_view prefix = {}) const;
  [[nodiscard]] std::size_t size() const noexcept { return order_.size(); }

 private:
  std::map<std::string, ProblemInstance, std::less<>> items_;
  std::map<std::string, double, std::less<>> optima_;
  std::vector<std::string> order_;
};

namespace fixtures {

/// Seeded generators behind the shipped assets.
ProblemInstance random_tsp(std::string id, std::size_t n, std::uint64_t seed);
ProblemInstance random_sort(std::string id, std::size_t n, std::uint64_t seed);
ProblemInstance random_tree(std::string id, std::size_t n, std::uint64_t seed);
/// Connected graph: a random spanning tree plus `extra` distinct edges,
/// integer weights in 1..20.
GraphData random_graph(std::size_t n, std::size_t extra, std::uint64_t seed);
ProblemInstance random_binpacking(std::string id, std::size_t items, std::uint64_t seed);
ProblemInstance random_matmul(std::string id, std::size_t n, std::uint64_t seed);
ProblemInstance rosenbrock_instance();

/// Every built-in fixture:
///   tsp20_0..4   20-city unit-square Euclidean (fingerprints, comparisons)
///   tsp12_0..4   12-city, Held-Karp optimum cached (search)
///   sort_0..4    permutations of 0..9
///   tree_0..2    15-node binary trees rooted at 0
///   graph_0..2   12-node connected graphs (traversal)
///   sp_0..2      the same graphs tagged for shortest paths
///   binpack_0..2 capacity 100, 30 items
///   matmul_0..1  4x4 integer matrices
///   rosenbrock   box [-2, 2]^2, starts "a" = (-1.2, 1) and "b" = (0.5, -0.5)
std::vector<ProblemInstance> builtin_instances();

/// Shared registry over builtin_instances().
const InstanceRegistry& builtin_registry();

/// Instance prefix conventionally used for an algorithm's task.
std::string_view default_prefix(Task task) noexcept;

}  // namespace fixtures

}  // namespace pstraj
