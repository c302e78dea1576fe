#include "pstraj/types.hpp"

#include <cmath>
#include <unordered_set>

#include "pstraj/error.hpp"

namespace pstraj {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NonSquareMatrix: return "NonSquareMatrix";
    case Errc::AsymmetricMatrix: return "AsymmetricMatrix";
    case Errc::NonzeroDiagonal: return "NonzeroDiagonal";
    case Errc::NegativeDistance: return "NegativeDistance";
    case Errc::EmptyStartPoints: return "EmptyStartPoints";
    case Errc::NonpositiveBound: return "NonpositiveBound";
    case Errc::BadInstanceData: return "BadInstanceData";
    case Errc::MissingFeature: return "MissingFeature";
    case Errc::ParseFailure: return "ParseFailure";
    case Errc::DepthExceeded: return "DepthExceeded";
    case Errc::EmptyTrajectory: return "EmptyTrajectory";
    case Errc::PayloadMismatch: return "PayloadMismatch";
    case Errc::NonVectorPayload: return "NonVectorPayload";
    case Errc::TooShort: return "TooShort";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::EmptyFingerprint: return "EmptyFingerprint";
    case Errc::InvalidSolution: return "InvalidSolution";
    case Errc::UnknownAlgorithm: return "UnknownAlgorithm";
    case Errc::UnknownInstance: return "UnknownInstance";
    case Errc::TaskMismatch: return "TaskMismatch";
    case Errc::BadStart: return "BadStart";
    case Errc::NotDsl: return "NotDsl";
    case Errc::EmptyStream: return "EmptyStream";
    case Errc::BadMatrix: return "BadMatrix";
    case Errc::BadK: return "BadK";
    case Errc::TooFewMembers: return "TooFewMembers";
    case Errc::EmptyIsland: return "EmptyIsland";
    case Errc::DegenerateConstantInput: return "DegenerateConstantInput";
    case Errc::EmptyPopulation: return "EmptyPopulation";
    case Errc::PopTooSmall: return "PopTooSmall";
    case Errc::InsufficientMembers: return "InsufficientMembers";
    case Errc::NotEnoughIslands: return "NotEnoughIslands";
    case Errc::FingerprintMismatch: return "FingerprintMismatch";
    case Errc::EvaluationFailure: return "EvaluationFailure";
    case Errc::Timeout: return "Timeout";
    case Errc::GeneratorUnavailable: return "GeneratorUnavailable";
    case Errc::BadConfig: return "BadConfig";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

std::string_view payload_kind_name(PayloadKind kind) noexcept {
  switch (kind) {
    case PayloadKind::PermSeq: return "perm_seq";
    case PayloadKind::CatSeq: return "cat_seq";
    case PayloadKind::RealVec: return "real_vec";
  }
  return "unknown";
}

void validate_solution(const Solution& s) {
  if (const auto* p = std::get_if<PermSeq>(&s.payload)) {
    std::unordered_set<std::uint32_t> seen;
    for (auto item : p->items) {
      if (!seen.insert(item).second) {
        throw Error(Errc::InvalidSolution, "duplicate item " + std::to_string(item) + " in perm_seq");
      }
    }
  } else if (const auto* r = std::get_if<RealVec>(&s.payload)) {
    for (double v : r->values) {
      if (!std::isfinite(v)) throw Error(Errc::InvalidSolution, "non-finite entry in real_vec");
    }
  }
}

void validate_trajectory(const PSTraj& t) {
  if (t.steps.empty()) throw Error(Errc::EmptyTrajectory, "trajectory has no steps");
  const PayloadKind kind = t.steps.front().kind();
  std::size_t dim = 0;
  if (kind == PayloadKind::RealVec) dim = std::get<RealVec>(t.steps.front().payload).values.size();
  for (const auto& s : t.steps) {
    if (s.kind() != kind) throw Error(Errc::PayloadMismatch, "mixed payload variants in trajectory");
    if (kind == PayloadKind::RealVec && std::get<RealVec>(s.payload).values.size() != dim) {
      throw Error(Errc::PayloadMismatch, "real_vec dimension changes within trajectory");
    }
    validate_solution(s);
  }
}

std::string_view task_name(Task task) noexcept {
  switch (task) {
    case Task::Tsp: return "tsp";
    case Task::Sort: return "sort";
    case Task::TreeTraversal: return "tree_traversal";
    case Task::GraphTraversal: return "graph_traversal";
    case Task::BinPacking: return "bin_packing";
    case Task::MatMul: return "mat_mul";
    case Task::ShortestPath: return "shortest_path";
    case Task::Rosenbrock: return "rosenbrock";
  }
  return "unknown";
}

std::optional<Task> parse_task(std::string_view name) noexcept {
  for (Task t : {Task::Tsp, Task::Sort, Task::TreeTraversal, Task::GraphTraversal, Task::BinPacking,
                 Task::MatMul, Task::ShortestPath, Task::Rosenbrock}) {
    if (task_name(t) == name) return t;
  }
  return std::nullopt;
}

const StartPoint& ProblemInstance::start(std::string_view start_id) const {
  for (const auto& s : start_points) {
    if (s.id == start_id) return s;
  }
  throw Error(Errc::BadStart, "instance '" + id + "' has no start '" + std::string(start_id) + "'");
}

namespace {

void check_distance_matrix(const Matrix& m) {
  if (m.rows != m.cols || m.data.size() != m.rows * m.cols) {
    throw Error(Errc::NonSquareMatrix, "distance matrix is not square");
  }
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (m(i, i) != 0.0) throw Error(Errc::NonzeroDiagonal, "d[" + std::to_string(i) + "][" + std::to_string(i) + "] != 0");
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (!std::isfinite(m(i, j)) || m(i, j) < 0.0) {
        throw Error(Errc::NegativeDistance, "d[" + std::to_string(i) + "][" + std::to_string(j) + "] is negative or non-finite");
      }
      if (m(i, j) != m(j, i)) {
        throw Error(Errc::AsymmetricMatrix, "d[" + std::to_string(i) + "][" + std::to_string(j) + "] != d[" +
                                                std::to_string(j) + "][" + std::to_string(i) + "]");
      }
    }
  }
}

std::size_t node_count(const InstanceData& data) {
  if (const auto* t = std::get_if<TspData>(&data)) return t->dist.rows;
  if (const auto* t = std::get_if<TreeData>(&data)) return t->left.size();
  if (const auto* g = std::get_if<GraphData>(&data)) return g->n;
  return 0;
}

}  // namespace

void validate_instance(const ProblemInstance& inst) {
  const auto expect = [&](bool ok, const char* what) {
    if (!ok) throw Error(Errc::BadInstanceData, "instance '" + inst.id + "': " + what);
  };
  switch (inst.task) {
    case Task::Tsp:
      expect(std::holds_alternative<TspData>(inst.data), "tsp task needs tsp data");
      check_distance_matrix(std::get<TspData>(inst.data).dist);
      break;
    case Task::Sort:
      expect(std::holds_alternative<SortData>(inst.data), "sort task needs an array");
      break;
    case Task::TreeTraversal: {
      expect(std::holds_alternative<TreeData>(inst.data), "tree task needs tree data");
      const auto& t = std::get<TreeData>(inst.data);
      expect(t.left.size() == t.right.size() && !t.left.empty(), "child arrays must match and be non-empty");
      break;
    }
    case Task::GraphTraversal:
    case Task::ShortestPath: {
      expect(std::holds_alternative<GraphData>(inst.data), "graph task needs graph data");
      const auto& g = std::get<GraphData>(inst.data);
      for (const auto& e : g.edges) {
        expect(e.u < g.n && e.v < g.n, "edge endpoint out of range");
        if (!(e.w >= 0.0) || !std::isfinite(e.w)) throw Error(Errc::NegativeDistance, "negative edge weight");
      }
      break;
    }
    case Task::BinPacking: {
      expect(std::holds_alternative<BinPackingData>(inst.data), "bin packing task needs items");
      const auto& b = std::get<BinPackingData>(inst.data);
      expect(b.capacity > 0.0, "capacity must be positive");
      for (double it : b.items) expect(it > 0.0 && it <= b.capacity, "item size out of (0, capacity]");
      break;
    }
    case Task::MatMul: {
      expect(std::holds_alternative<MatMulData>(inst.data), "matmul task needs matrices");
      const auto& m = std::get<MatMulData>(inst.data);
      expect(m.a.cols == m.b.rows, "inner dimensions differ");
      break;
    }
    case Task::Rosenbrock: {
      expect(std::holds_alternative<RosenbrockData>(inst.data), "rosenbrock task needs a box");
      const auto& r = std::get<RosenbrockData>(inst.data);
      expect(r.lo[0] < r.hi[0] && r.lo[1] < r.hi[1], "empty start box");
      expect(r.steps >= 1, "step budget must be positive");
      break;
    }
  }
  if (inst.start_points.empty()) throw Error(Errc::EmptyStartPoints, "instance '" + inst.id + "' has no start points");
  if (inst.d_max_hint && !(*inst.d_max_hint > 0.0)) {
    throw Error(Errc::NonpositiveBound, "instance '" + inst.id + "' has d_max_hint <= 0");
  }
  const std::size_t nodes = node_count(inst.data);
  for (const auto& s : inst.start_points) {
    if (const auto* idx = std::get_if<std::uint32_t>(&s.value)) {
      if (nodes != 0 && *idx >= nodes) throw Error(Errc::BadStart, "start '" + s.id + "' is out of range");
    } else if (inst.task == Task::Rosenbrock) {
      const auto& p = std::get<std::vector<double>>(s.value);
      if (p.size() != 2) throw Error(Errc::BadStart, "rosenbrock start '" + s.id + "' must be 2-dimensional");
      const auto& r = std::get<RosenbrockData>(inst.data);
      for (int k = 0; k < 2; ++k) {
        if (p[k] < r.lo[k] || p[k] > r.hi[k]) throw Error(Errc::BadStart, "rosenbrock start '" + s.id + "' is outside the box");
      }
    }
  }
}

}  // namespace pstraj
