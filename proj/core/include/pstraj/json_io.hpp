#pragma once

// Canonical JSON encodings. Enums are lowercase strings; reals are written
// with round-trip precision by the json library.
//
//   Solution      {"payload": {"perm_seq": [..]}} (or cat_seq / real_vec)
//   PSTraj        {"steps": [Solution..], "meta": {algorithm_id, instance_id, start_id, seed}}
//   Expr          {"const": 2.5} | {"feature": "dist_to_current"}
//                 | {"unary": "neg", "child": e} | {"binary": "add", "left": e, "right": e}
//   AlgorithmSpec {"kind": {"zoo": {"name": ..}} | {"dsl": {"expr": Expr}},
//                  "display_text": .., "length_tokens": n}

#include <nlohmann/json.hpp>

#include "pstraj/algorithm.hpp"
#include "pstraj/expr.hpp"
#include "pstraj/trajsim.hpp"
#include "pstraj/types.hpp"

namespace pstraj {

using Json = nlohmann::json;

Json to_json(const Solution& s);
Json to_json(const TrajMeta& m);
Json to_json(const PSTraj& t);
Json to_json(const Expr& e);
Json to_json(const AlgorithmSpec& a);
Json to_json(const ScoredAlgorithm& a);
Json to_json(const ProblemInstance& inst);
Json to_json(const TrajSimConfig& cfg);

// Decoders throw ParseFailure naming the offending field.
Solution solution_from_json(const Json& j);
TrajMeta meta_from_json(const Json& j);
PSTraj pstraj_from_json(const Json& j);
Expr expr_from_json(const Json& j);
AlgorithmSpec spec_from_json(const Json& j);
ScoredAlgorithm scored_from_json(const Json& j);
ProblemInstance instance_from_json(const Json& j);
/// Missing fields keep their defaults.
TrajSimConfig traj_config_from_json(const Json& j);

/// Parses text, mapping syntax errors to ParseFailure.
Json parse_json_text(std::string_view text);
/// Reads and parses a file; throws Io or ParseFailure.
Json read_json_file(const std::string& path);

}  // namespace pstraj
