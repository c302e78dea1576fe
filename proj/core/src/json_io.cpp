#include "pstraj/json_io.hpp"

#include <fstream>
#include <sstream>

#include "pstraj/error.hpp"

namespace pstraj {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(Errc::ParseFailure, what); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) fail(std::string("expected an object holding '") + name + "'");
  const auto it = j.find(name);
  if (it == j.end()) fail(std::string("missing field '") + name + "'");
  return *it;
}

template <class T>
T get_as(const Json& j, const char* name) {
  try {
    return field(j, name).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(std::string("field '") + name + "' has the wrong type");
  }
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols; ++j) r.push_back(m(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

Matrix matrix_from(const Json& j, const char* name) {
  const auto rows = get_as<std::vector<std::vector<double>>>(j, name);
  Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols) fail(std::string("field '") + name + "' is ragged");
    for (std::size_t k = 0; k < m.cols; ++k) m(i, k) = rows[i][k];
  }
  return m;
}

Json data_json(const InstanceData& data) {
  return std::visit(
      [](const auto& d) -> Json {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, TspData>) {
          Json j{{"dist", matrix_json(d.dist)}};
          if (!d.coords.empty()) j["coords"] = d.coords;
          return j;
        } else if constexpr (std::is_same_v<T, SortData>) {
          return {{"values", d.values}};
        } else if constexpr (std::is_same_v<T, TreeData>) {
          return {{"left", d.left}, {"right", d.right}};
        } else if constexpr (std::is_same_v<T, GraphData>) {
          Json edges = Json::array();
          for (const auto& e : d.edges) edges.push_back({e.u, e.v, e.w});
          return {{"n", d.n}, {"edges", std::move(edges)}};
        } else if constexpr (std::is_same_v<T, BinPackingData>) {
          return {{"capacity", d.capacity}, {"items", d.items}};
        } else if constexpr (std::is_same_v<T, MatMulData>) {
          return {{"a", matrix_json(d.a)}, {"b", matrix_json(d.b)}};
        } else {
          return {{"lo", d.lo}, {"hi", d.hi}, {"steps", d.steps}};
        }
      },
      data);
}

InstanceData data_from(Task task, const Json& j) {
  switch (task) {
    case Task::Tsp: {
      TspData d{matrix_from(j, "dist"), {}};
      if (j.contains("coords")) d.coords = get_as<std::vector<std::array<double, 2>>>(j, "coords");
      return d;
    }
    case Task::Sort: return SortData{get_as<std::vector<std::uint32_t>>(j, "values")};
    case Task::TreeTraversal:
      return TreeData{get_as<std::vector<std::int32_t>>(j, "left"), get_as<std::vector<std::int32_t>>(j, "right")};
    case Task::GraphTraversal:
    case Task::ShortestPath: {
      GraphData g;
      g.n = get_as<std::size_t>(j, "n");
      for (const auto& e : get_as<std::vector<std::tuple<std::uint32_t, std::uint32_t, double>>>(j, "edges")) {
        g.edges.push_back({std::get<0>(e), std::get<1>(e), std::get<2>(e)});
      }
      return g;
    }
    case Task::BinPacking: return BinPackingData{get_as<double>(j, "capacity"), get_as<std::vector<double>>(j, "items")};
    case Task::MatMul: return MatMulData{matrix_from(j, "a"), matrix_from(j, "b")};
    case Task::Rosenbrock: {
      RosenbrockData r;
      r.lo = get_as<std::array<double, 2>>(j, "lo");
      r.hi = get_as<std::array<double, 2>>(j, "hi");
      if (j.contains("steps")) r.steps = get_as<std::size_t>(j, "steps");
      return r;
    }
  }
  fail("unknown task");
}

}  // namespace

Json to_json(const Solution& s) {
  Json payload;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PermSeq>) {
          payload["perm_seq"] = p.items;
        } else if constexpr (std::is_same_v<T, CatSeq>) {
          payload["cat_seq"] = p.labels;
        } else {
          payload["real_vec"] = p.values;
        }
      },
      s.payload);
  return {{"payload", std::move(payload)}};
}

Solution solution_from_json(const Json& j) {
  const Json& p = field(j, "payload");
  if (p.contains("perm_seq")) return Solution::perm(get_as<std::vector<std::uint32_t>>(p, "perm_seq"));
  if (p.contains("cat_seq")) return Solution::cat(get_as<std::vector<std::uint32_t>>(p, "cat_seq"));
  if (p.contains("real_vec")) return Solution::real(get_as<std::vector<double>>(p, "real_vec"));
  fail("payload must hold perm_seq, cat_seq or real_vec");
}

Json to_json(const TrajMeta& m) {
  return {{"algorithm_id", m.algorithm_id}, {"instance_id", m.instance_id}, {"start_id", m.start_id}, {"seed", m.seed}};
}

TrajMeta meta_from_json(const Json& j) {
  return {get_as<std::string>(j, "algorithm_id"), get_as<std::string>(j, "instance_id"),
          get_as<std::string>(j, "start_id"), get_as<std::uint64_t>(j, "seed")};
}

Json to_json(const PSTraj& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) steps.push_back(to_json(s));
  return {{"steps", std::move(steps)}, {"meta", to_json(t.meta)}};
}

PSTraj pstraj_from_json(const Json& j) {
  PSTraj t;
  const Json& steps = field(j, "steps");
  if (!steps.is_array()) fail("field 'steps' must be an array");
  for (const auto& s : steps) t.steps.push_back(solution_from_json(s));
  t.meta = meta_from_json(field(j, "meta"));
  validate_trajectory(t);
  return t;
}

Json to_json(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Const: return {{"const", e.value()}};
    case Expr::Kind::Feature: return {{"feature", feature_name(e.feature_id())}};
    case Expr::Kind::Unary: return {{"unary", unary_name(e.unary_op())}, {"child", to_json(e.child())}};
    case Expr::Kind::Binary:
      return {{"binary", binary_name(e.binary_op())}, {"left", to_json(e.left())}, {"right", to_json(e.right())}};
  }
  return {};
}

Expr expr_from_json(const Json& j) {
  if (j.contains("const")) return Expr::constant(get_as<double>(j, "const"));
  if (j.contains("feature")) {
    const auto name = get_as<std::string>(j, "feature");
    const auto f = parse_feature(name);
    if (!f) fail("unknown feature '" + name + "'");
    return Expr::feature(*f);
  }
  if (j.contains("unary")) {
    const auto name = get_as<std::string>(j, "unary");
    for (std::size_t i = 0; i < kUnaryOpCount; ++i) {
      const auto op = static_cast<UnaryOp>(i);
      if (unary_name(op) == name) return Expr::unary(op, expr_from_json(field(j, "child")));
    }
    fail("unknown unary operator '" + name + "'");
  }
  if (j.contains("binary")) {
    const auto name = get_as<std::string>(j, "binary");
    for (std::size_t i = 0; i < kBinaryOpCount; ++i) {
      const auto op = static_cast<BinaryOp>(i);
      if (binary_name(op) == name) {
        return Expr::binary(op, expr_from_json(field(j, "left")), expr_from_json(field(j, "right")));
      }
    }
    fail("unknown binary operator '" + name + "'");
  }
  fail("expression node must be const, feature, unary or binary");
}

Json to_json(const AlgorithmSpec& a) {
  Json kind;
  if (a.is_dsl()) {
    kind["dsl"] = {{"expr", to_json(a.expr())}};
  } else {
    kind["zoo"] = {{"name", std::get<ZooRef>(a.kind).name}};
  }
  return {{"kind", std::move(kind)}, {"display_text", a.display_text}, {"length_tokens", a.length_tokens}};
}

AlgorithmSpec spec_from_json(const Json& j) {
  const Json& kind = field(j, "kind");
  AlgorithmSpec a;
  if (kind.contains("dsl")) {
    a = AlgorithmSpec::dsl(expr_from_json(field(field(kind, "dsl"), "expr")));
  } else if (kind.contains("zoo")) {
    a = AlgorithmSpec::zoo(get_as<std::string>(field(kind, "zoo"), "name"), get_as<std::string>(j, "display_text"));
  } else {
    fail("kind must be zoo or dsl");
  }
  if (a.display_text != get_as<std::string>(j, "display_text") || a.length_tokens != get_as<std::size_t>(j, "length_tokens")) {
    fail("display_text / length_tokens do not match the algorithm");
  }
  return a;
}

Json to_json(const ScoredAlgorithm& a) {
  Json trajs = Json::array();
  for (const auto& t : a.trajs) trajs.push_back(to_json(t));
  return {{"spec", to_json(a.spec)},
          {"fitness", a.fitness},
          {"trajs", std::move(trajs)},
          {"eval_count_at_birth", a.eval_count_at_birth}};
}

ScoredAlgorithm scored_from_json(const Json& j) {
  ScoredAlgorithm a;
  a.spec = spec_from_json(field(j, "spec"));
  a.fitness = get_as<double>(j, "fitness");
  const Json& trajs = field(j, "trajs");
  if (!trajs.is_array()) fail("field 'trajs' must be an array");
  for (const auto& t : trajs) a.trajs.push_back(pstraj_from_json(t));
  a.eval_count_at_birth = get_as<std::uint64_t>(j, "eval_count_at_birth");
  return a;
}

Json to_json(const ProblemInstance& inst) {
  Json starts = Json::array();
  for (const auto& s : inst.start_points) {
    Json v = std::holds_alternative<std::uint32_t>(s.value) ? Json(std::get<std::uint32_t>(s.value))
                                                            : Json(std::get<std::vector<double>>(s.value));
    starts.push_back({{"id", s.id}, {"value", std::move(v)}});
  }
  Json j{{"id", inst.id}, {"task", task_name(inst.task)}, {"data", data_json(inst.data)}, {"start_points", starts}};
  if (inst.d_max_hint) j["d_max_hint"] = *inst.d_max_hint;
  return j;
}

ProblemInstance instance_from_json(const Json& j) {
  ProblemInstance inst;
  inst.id = get_as<std::string>(j, "id");
  const auto task_text = get_as<std::string>(j, "task");
  const auto task = parse_task(task_text);
  if (!task) fail("unknown task '" + task_text + "'");
  inst.task = *task;
  inst.data = data_from(*task, field(j, "data"));
  const Json& starts = field(j, "start_points");
  if (!starts.is_array()) fail("field 'start_points' must be an array");
  for (const auto& s : starts) {
    const Json& v = field(s, "value");
    StartPoint sp;
    sp.id = get_as<std::string>(s, "id");
    if (v.is_number_unsigned()) {
      sp.value = v.get<std::uint32_t>();
    } else if (v.is_array()) {
      sp.value = get_as<std::vector<double>>(s, "value");
    } else {
      fail("start value must be a node index or a point");
    }
    inst.start_points.push_back(std::move(sp));
  }
  if (j.contains("d_max_hint")) inst.d_max_hint = get_as<double>(j, "d_max_hint");
  validate_instance(inst);
  return inst;
}

Json to_json(const TrajSimConfig& cfg) {
  Json j{{"measure", measure_name(cfg.measure)},
         {"truncate_k", cfg.truncate_k},
         {"sample_n", cfg.sample_n},
         {"d_max_rule", cfg.dist.d_max_rule == DMaxRule::MaxLen ? "max_len" : "instance_hint"},
         {"euclid_bound", cfg.dist.euclid_bound}};
  if (cfg.erp_gap_ref) j["erp_gap_ref"] = to_json(*cfg.erp_gap_ref);
  return j;
}

TrajSimConfig traj_config_from_json(const Json& j) {
  TrajSimConfig cfg;
  if (!j.is_object()) fail("trajectory config must be an object");
  if (j.contains("measure")) {
    const auto name = get_as<std::string>(j, "measure");
    const auto m = parse_measure(name);
    if (!m) fail("unknown measure '" + name + "'");
    cfg.measure = *m;
  }
  if (j.contains("truncate_k")) cfg.truncate_k = get_as<double>(j, "truncate_k");
  if (j.contains("sample_n")) cfg.sample_n = get_as<std::size_t>(j, "sample_n");
  if (j.contains("d_max_rule")) {
    const auto rule = get_as<std::string>(j, "d_max_rule");
    if (rule == "max_len") {
      cfg.dist.d_max_rule = DMaxRule::MaxLen;
    } else if (rule == "instance_hint") {
      cfg.dist.d_max_rule = DMaxRule::InstanceHint;
    } else {
      fail("unknown d_max_rule '" + rule + "'");
    }
  }
  if (j.contains("euclid_bound")) cfg.dist.euclid_bound = get_as<double>(j, "euclid_bound");
  if (j.contains("erp_gap_ref")) cfg.erp_gap_ref = solution_from_json(field(j, "erp_gap_ref"));
  validate_config(cfg);
  return cfg;
}

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

}  // namespace pstraj
