#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "pstraj/algorithm.hpp"
#include "pstraj/types.hpp"

namespace pstraj::zoo {

using Runner = std::function<std::vector<Solution>(const ProblemInstance&, const StartPoint&, std::uint64_t seed)>;

/// A reference algorithm instrumented to emit its intermediate solutions.
struct ZooAlgorithm {
  std::string id;
  Task task;
  Runner runner;
  std::string pseudocode;
};

/// All registered algorithms, in a fixed order.
const std::vector<ZooAlgorithm>& algorithms();

/// nullptr when unknown.
const ZooAlgorithm* find(std::string_view id);

/// Throws UnknownAlgorithm.
AlgorithmSpec spec(std::string_view id);

/// Runs a zoo algorithm. Throws UnknownAlgorithm, TaskMismatch, BadStart.
PSTraj run_zoo(std::string_view id, const ProblemInstance& inst, std::string_view start_id, std::uint64_t seed = 0);

/// Zoo algorithms run as above; DSL heuristics run the greedy tour builder
/// on Tsp instances (TaskMismatch otherwise).
PSTraj run_algorithm(const AlgorithmSpec& spec, const ProblemInstance& inst, std::string_view start_id,
                     std::uint64_t seed = 0);

enum class PairType { T1, T2, T3, T4 };

std::string_view pair_type_name(PairType t) noexcept;

/// One benchmark pair: text/result/behavior similarity type plus members.
struct DatasetPair {
  PairType type_tag;
  std::string left;
  std::string right;
  std::string case_label;
};

/// The fixed four-type benchmark registry (3 + 3 + 6 + 18 pairs).
const std::vector<DatasetPair>& dataset_pairs();

// Runners exposed for direct testing. Each returns the recorded steps.

std::vector<Solution> bubble_sort(std::vector<std::uint32_t> a);
std::vector<Solution> bubble_sort_recursive(std::vector<std::uint32_t> a);
std::vector<Solution> insertion_sort(std::vector<std::uint32_t> a);
std::vector<Solution> insertion_sort_recursive(std::vector<std::uint32_t> a);
std::vector<Solution> selection_sort(std::vector<std::uint32_t> a);
std::vector<Solution> merge_sort(std::vector<std::uint32_t> a);
std::vector<Solution> merge_sort_buffered(std::vector<std::uint32_t> a);
std::vector<Solution> quick_sort(std::vector<std::uint32_t> a);
std::vector<Solution> heap_sort(std::vector<std::uint32_t> a);

enum class ChildOrder { LeftFirst, RightFirst };

std::vector<Solution> bfs_queue(const TreeData& tree, std::uint32_t root, ChildOrder order);
std::vector<Solution> bfs_levels_recursive(const TreeData& tree, std::uint32_t root);
std::vector<Solution> dfs_stack(const TreeData& tree, std::uint32_t root, ChildOrder order);
std::vector<Solution> dfs_recursive(const TreeData& tree, std::uint32_t root);

enum class Pick { Min, Max };

/// Greedy depth-first walk: step to the lightest (or heaviest) unvisited
/// neighbor, backtracking when the current node is exhausted.
std::vector<Solution> graph_greedy(const GraphData& g, std::uint32_t start, Pick pick);

std::vector<Solution> dijkstra(const GraphData& g, std::uint32_t source);
std::vector<Solution> bellman_ford(const GraphData& g, std::uint32_t source);
std::vector<Solution> floyd_slice(const GraphData& g, std::uint32_t source);
/// Finite stand-in for "unreached" tentative distances: total edge weight + 1.
double unreached_distance(const GraphData& g);

std::vector<Solution> first_fit(const BinPackingData& b);
std::vector<Solution> first_fit_alt(const BinPackingData& b);
std::vector<Solution> best_fit(const BinPackingData& b);
std::vector<Solution> best_fit_alt(const BinPackingData& b);
/// Picks the feasible bin maximizing -w1 * leftover / C + w2 * k / (k + 1),
/// where k counts items already in the bin; opens a bin when none fits.
std::vector<Solution> weighted_fit(const BinPackingData& b, double w1, double w2);

enum class LoopOrder { Ijk, Jik };
std::vector<Solution> matmul(const MatMulData& m, LoopOrder order);

std::vector<Solution> tsp_greedy_neighbor(const Matrix& dist, std::uint32_t start, Pick pick);

}  // namespace pstraj::zoo
