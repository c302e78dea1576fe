#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pstraj {

/// Row-major dense matrix of doubles.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  bool operator==(const Matrix&) const = default;
};

// ---------------------------------------------------------------------------
// Solutions and trajectories

/// Permutation or permutation prefix: item identifiers without duplicates.
struct PermSeq {
  std::vector<std::uint32_t> items;
  bool operator==(const PermSeq&) const = default;
};

/// Sequence of small category labels (e.g. bin index per packed item).
struct CatSeq {
  std::vector<std::uint32_t> labels;
  bool operator==(const CatSeq&) const = default;
};

/// Finite real vector in problem units.
struct RealVec {
  std::vector<double> values;
  bool operator==(const RealVec&) const = default;
};

enum class PayloadKind { PermSeq, CatSeq, RealVec };

std::string_view payload_kind_name(PayloadKind kind) noexcept;

/// One intermediate or partial solution emitted by an iterative algorithm.
struct Solution {
  std::variant<PermSeq, CatSeq, RealVec> payload;

  static Solution perm(std::vector<std::uint32_t> items) { return {PermSeq{std::move(items)}}; }
  static Solution cat(std::vector<std::uint32_t> labels) { return {CatSeq{std::move(labels)}}; }
  static Solution real(std::vector<double> values) { return {RealVec{std::move(values)}}; }

  [[nodiscard]] PayloadKind kind() const noexcept { return static_cast<PayloadKind>(payload.index()); }

  bool operator==(const Solution&) const = default;
};

/// Throws InvalidSolution on duplicate PermSeq items or non-finite RealVec entries.
void validate_solution(const Solution& s);

struct TrajMeta {
  std::string algorithm_id;
  std::string instance_id;
  std::string start_id;
  std::uint64_t seed = 0;
  bool operator==(const TrajMeta&) const = default;
};

/// Problem-solving trajectory: the ordered intermediate solutions of one run.
struct PSTraj {
  std::vector<Solution> steps;
  TrajMeta meta;

  [[nodiscard]] std::size_t size() const noexcept { return steps.size(); }
  [[nodiscard]] PayloadKind kind() const { return steps.front().kind(); }

  bool operator==(const PSTraj&) const = default;
};

/// Checks non-emptiness, a single payload variant, and a shared RealVec dimension.
void validate_trajectory(const PSTraj& t);

// ---------------------------------------------------------------------------
// Problem instances

enum class Task { Tsp, Sort, TreeTraversal, GraphTraversal, BinPacking, MatMul, ShortestPath, Rosenbrock };

std::string_view task_name(Task task) noexcept;
std::optional<Task> parse_task(std::string_view name) noexcept;

struct TspData {
  Matrix dist;
  std::vector<std::array<double, 2>> coords;  // optional; empty when only distances are known
};

struct SortData {
  std::vector<std::uint32_t> values;
};

/// Binary tree over nodes 0..n-1; -1 marks a missing child.
struct TreeData {
  std::vector<std::int32_t> left;
  std::vector<std::int32_t> right;
};

struct Edge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  double w = 0.0;
};

/// Undirected weighted graph.
struct GraphData {
  std::size_t n = 0;
  std::vector<Edge> edges;
};

struct BinPackingData {
  double capacity = 0.0;
  std::vector<double> items;
};

struct MatMulData {
  Matrix a;
  Matrix b;
};

struct RosenbrockData {
  std::array<double, 2> lo{-2.0, -2.0};
  std::array<double, 2> hi{2.0, 2.0};
  std::size_t steps = 200;
};

using InstanceData =
    std::variant<TspData, SortData, TreeData, GraphData, BinPackingData, MatMulData, RosenbrockData>;

/// Admissible start: a node/city index or an initial point.
struct StartPoint {
  std::string id;
  std::variant<std::uint32_t, std::vector<double>> value;
};

struct ProblemInstance {
  std::string id;
  Task task = Task::Tsp;
  InstanceData data;
  std::vector<StartPoint> start_points;
  std::optional<double> d_max_hint;

  [[nodiscard]] const StartPoint& start(std::string_view start_id) const;
};

/// Throws Error naming the first violated invariant.
void validate_instance(const ProblemInstance& inst);

}  // namespace pstraj
