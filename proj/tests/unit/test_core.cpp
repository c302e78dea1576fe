#include <cmath>
#include <limits>

#include "doctest.h"
#include "pstraj/algorithm.hpp"
#include "pstraj/error.hpp"
#include "pstraj/expr.hpp"
#include "pstraj/fixtures.hpp"
#include "pstraj/json_io.hpp"
#include "pstraj/rng.hpp"
#include "pstraj/zoo/zoo.hpp"

using namespace pstraj;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::Io;
}

ProblemInstance tiny_tsp() {
  ProblemInstance inst;
  inst.id = "tiny";
  inst.task = Task::Tsp;
  Matrix d(3, 3);
  d(0, 1) = d(1, 0) = 1;
  d(0, 2) = d(2, 0) = 2;
  d(1, 2) = d(2, 1) = 1;
  inst.data = TspData{d, {}};
  inst.start_points = {{"0", 0u}};
  return inst;
}

// Trees with wild constants, including values near the saturation bound.
Expr wild_tree(Rng& rng, int depth) {
  if (depth <= 1 || rng.bernoulli(0.25)) {
    if (rng.bernoulli(0.5)) return Expr::feature(static_cast<FeatureId>(rng.below(kFeatureCount)));
    const double mag = std::pow(10.0, rng.uniform(-12.0, 200.0));
    return Expr::constant(rng.bernoulli(0.5) ? mag : -mag);
  }
  if (rng.bernoulli(0.3)) return Expr::unary(static_cast<UnaryOp>(rng.below(kUnaryOpCount)), wild_tree(rng, depth - 1));
  return Expr::binary(static_cast<BinaryOp>(rng.below(kBinaryOpCount)), wild_tree(rng, depth - 1),
                      wild_tree(rng, depth - 1));
}

Expr printable_tree(Rng& rng, int depth) {
  if (depth <= 1 || rng.bernoulli(0.3)) {
    if (rng.bernoulli(0.6)) return Expr::feature(static_cast<FeatureId>(rng.below(kFeatureCount)));
    // three distinct constants keep accidental collisions likely
    const double vals[] = {0.5, -1.25, 3.0};
    return Expr::constant(vals[rng.below(3)]);
  }
  if (rng.bernoulli(0.3)) {
    return Expr::unary(static_cast<UnaryOp>(rng.below(kUnaryOpCount)), printable_tree(rng, depth - 1));
  }
  return Expr::binary(static_cast<BinaryOp>(rng.below(kBinaryOpCount)), printable_tree(rng, depth - 1),
                      printable_tree(rng, depth - 1));
}

FeatureValues all_features(double v) {
  FeatureValues f;
  for (auto& x : f) x = v;
  return f;
}

}  // namespace

TEST_CASE("validate_instance accepts a well formed matrix") {
  CHECK_NOTHROW(validate_instance(tiny_tsp()));
}

TEST_CASE("validate_instance names the violated invariant") {
  auto asym = tiny_tsp();
  std::get<TspData>(asym.data).dist(0, 1) = 5;
  CHECK(code_of([&] { validate_instance(asym); }) == Errc::AsymmetricMatrix);

  auto no_starts = tiny_tsp();
  no_starts.start_points.clear();
  CHECK(code_of([&] { validate_instance(no_starts); }) == Errc::EmptyStartPoints);

  auto bad_hint = tiny_tsp();
  bad_hint.d_max_hint = 0.0;
  CHECK(code_of([&] { validate_instance(bad_hint); }) == Errc::NonpositiveBound);

  auto diag = tiny_tsp();
  std::get<TspData>(diag.data).dist(1, 1) = 0.5;
  CHECK(code_of([&] { validate_instance(diag); }) == Errc::NonzeroDiagonal);

  auto neg = tiny_tsp();
  std::get<TspData>(neg.data).dist(0, 2) = std::get<TspData>(neg.data).dist(2, 0) = -1;
  CHECK(code_of([&] { validate_instance(neg); }) == Errc::NegativeDistance);
}

TEST_CASE("every builtin fixture validates") {
  for (const auto& inst : fixtures::builtin_instances()) {
    CAPTURE(inst.id);
    CHECK_NOTHROW(validate_instance(inst));
  }
}

TEST_CASE("solution and trajectory invariants") {
  CHECK(code_of([] { validate_solution(Solution::perm({1, 2, 1})); }) == Errc::InvalidSolution);
  CHECK(code_of([] { validate_solution(Solution::real({0.0, std::nan("")})); }) == Errc::InvalidSolution);
  CHECK_NOTHROW(validate_solution(Solution::cat({0, 0, 1})));

  PSTraj empty;
  CHECK(code_of([&] { validate_trajectory(empty); }) == Errc::EmptyTrajectory);
  PSTraj mixed;
  mixed.steps = {Solution::perm({0}), Solution::real({1.0})};
  CHECK(code_of([&] { validate_trajectory(mixed); }) == Errc::PayloadMismatch);
  PSTraj dims;
  dims.steps = {Solution::real({0.0, 1.0}), Solution::real({1.0})};
  CHECK_THROWS_AS(validate_trajectory(dims), Error);
}

TEST_CASE("expr_eval examples") {
  FeatureValues none;
  CHECK(expr_eval(Expr::constant(2.5), none) == 2.5);
  CHECK(expr_eval(Expr::binary(BinaryOp::DivSafe, Expr::constant(1), Expr::constant(0)), none) == 1.0);

  FeatureValues f;
  f[static_cast<std::size_t>(FeatureId::DistToCurrent)] = 3.0;
  const auto e = Expr::binary(BinaryOp::Add, Expr::feature(FeatureId::DistToCurrent), Expr::constant(1));
  CHECK(expr_eval(e, f) == 4.0);

  CHECK(code_of([&] { expr_eval(e, none); }) == Errc::MissingFeature);
}

TEST_CASE("safe operators act on magnitudes") {
  FeatureValues none;
  CHECK(expr_eval(Expr::unary(UnaryOp::SqrtSafe, Expr::constant(-9)), none) == doctest::Approx(3.0));
  CHECK(expr_eval(Expr::unary(UnaryOp::Log1pSafe, Expr::constant(-1)), none) == doctest::Approx(std::log1p(1.0)));
  CHECK(expr_eval(Expr::binary(BinaryOp::DivSafe, Expr::constant(7), Expr::constant(1e-10)), none) == 7.0);
  CHECK(expr_eval(Expr::binary(BinaryOp::Min, Expr::constant(7), Expr::constant(-2)), none) == -2.0);
}

TEST_CASE("expr_eval stays finite on random trees") {
  Rng rng(11);
  const double inputs[] = {0.0, -1e-300, 1e-9, 1.0, -7.5, 1e300, -1e300};
  for (int k = 0; k < 2000; ++k) {
    const auto e = wild_tree(rng, 8);
    for (double v : inputs) {
      const double r = expr_eval(e, all_features(v));
      REQUIRE(std::isfinite(r));
    }
  }
}

TEST_CASE("display text distinguishes structurally distinct trees") {
  Rng rng(5);
  std::vector<Expr> trees;
  for (int i = 0; i < 400; ++i) trees.push_back(printable_tree(rng, 4));
  for (std::size_t i = 0; i < trees.size(); ++i) {
    for (std::size_t j = i + 1; j < trees.size(); ++j) {
      CHECK((to_sexpr(trees[i]) == to_sexpr(trees[j])) == (trees[i] == trees[j]));
    }
  }
}

TEST_CASE("S-expressions parse back to the same tree") {
  Rng rng(6);
  for (int i = 0; i < 300; ++i) {
    const auto e = printable_tree(rng, 6);
    CHECK(parse_sexpr(to_sexpr(e)) == e);
  }
  CHECK(to_sexpr(Expr::constant(0.1234567)) == "(const 0.123457)");
  CHECK(code_of([] { parse_sexpr("(add (const 1))"); }) == Errc::ParseFailure);
  CHECK(code_of([] { parse_sexpr("(feat not_a_feature)"); }) == Errc::ParseFailure);
}

TEST_CASE("extract_sexpr finds the expression inside chatter") {
  const auto e = extract_sexpr("Sure! Try (add (feat dist_to_current) (const 0.1)) for this.");
  REQUIRE(e.has_value());
  CHECK(e->size() == 3);
  CHECK_FALSE(extract_sexpr("no expression (here) at all").has_value());
}

TEST_CASE("preorder editing helpers") {
  const auto e = parse_sexpr("(mul (neg (feat dist_to_current)) (const 2))");
  const auto nodes = preorder(e);
  REQUIRE(nodes.size() == 4);
  CHECK(depth_at(e, 0) == 1);
  CHECK(depth_at(e, 2) == 3);
  const auto r = replace_at(e, 3, Expr::feature(FeatureId::RemainingCount));
  CHECK(to_sexpr(r) == "(mul (neg (feat dist_to_current)) (feat remaining_count))");
  CHECK(to_sexpr(e) == "(mul (neg (feat dist_to_current)) (const 2))");
}

TEST_CASE("AlgorithmSpec derives its text deterministically") {
  const auto e = parse_sexpr("(add (feat dist_to_current) (const 0.1))");
  const auto a = AlgorithmSpec::dsl(e);
  const auto b = AlgorithmSpec::dsl(parse_sexpr(to_sexpr(e)));
  CHECK(a.display_text == b.display_text);
  CHECK(a.length_tokens == tokenize(a.display_text).size());
  CHECK(a.id() == a.display_text);

  const auto z = zoo::spec("bubble_sort");
  CHECK(z.id() == "bubble_sort");
  CHECK_FALSE(z.is_dsl());
}

TEST_CASE("tokenize splits words and punctuation") {
  const auto t = tokenize("for i in range(n - 1):");
  const std::vector<std::string> want{"for", "i", "in", "range", "(", "n", "-", "1", ")", ":"};
  CHECK(t == want);
}

TEST_CASE("JSON round trips") {
  SUBCASE("trajectories of every payload kind") {
    PSTraj t;
    t.meta = {"algo", "inst", "a", 42};
    t.steps = {Solution::real({0.1, 1.0 / 3.0}), Solution::real({-2.5e-17, 1e300})};
    CHECK(pstraj_from_json(to_json(t)) == t);
    t.steps = {Solution::perm({3}), Solution::perm({3, 0, 7})};
    CHECK(pstraj_from_json(to_json(t)) == t);
    t.steps = {Solution::cat({}), Solution::cat({0, 1, 1})};
    CHECK(pstraj_from_json(to_json(t)) == t);
  }
  SUBCASE("specs") {
    const auto z = zoo::spec("dfs_left");
    CHECK(spec_from_json(to_json(z)) == z);
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
      const auto d = AlgorithmSpec::dsl(wild_tree(rng, 5));
      CHECK(spec_from_json(to_json(d)) == d);
    }
  }
  SUBCASE("scored algorithm") {
    ScoredAlgorithm s;
    s.spec = AlgorithmSpec::dsl(Expr::feature(FeatureId::DistToCurrent));
    s.fitness = 0.125;
    s.eval_count_at_birth = 9;
    s.trajs = {zoo::run_zoo("tsp_nearest_neighbor", fixtures::builtin_registry().get("tsp12_0"), "0")};
    const auto back = scored_from_json(to_json(s));
    CHECK(back.spec == s.spec);
    CHECK(back.fitness == s.fitness);
    CHECK(back.trajs == s.trajs);
    CHECK(back.eval_count_at_birth == 9);
  }
  SUBCASE("instances") {
    for (const auto& inst : fixtures::builtin_instances()) {
      CAPTURE(inst.id);
      CHECK(to_json(instance_from_json(to_json(inst))) == to_json(inst));
    }
  }
  SUBCASE("trajectory config") {
    TrajSimConfig c;
    c.measure = TrajMeasure::Erp;
    c.truncate_k = 0.2;
    c.sample_n = 3;
    c.erp_gap_ref = Solution::real({1.0, 1.0});
    c.dist.d_max_rule = DMaxRule::InstanceHint;
    c.dist.euclid_bound = 4.0;
    CHECK(to_json(traj_config_from_json(to_json(c))) == to_json(c));
  }
}

TEST_CASE("JSON encodings use lowercase enum names") {
  const auto j = to_json(Solution::perm({1, 2}));
  CHECK(j["payload"].contains("perm_seq"));
  CHECK(to_json(fixtures::builtin_registry().get("sort_0"))["task"] == "sort");
  CHECK(code_of([] { solution_from_json(Json{{"payload", {{"bogus", 1}}}}); }) == Errc::ParseFailure);
  CHECK(code_of([] { parse_json_text("{not json"); }) == Errc::ParseFailure);
}

TEST_CASE("Rng helpers are reproducible") {
  Rng a(99), b(99);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.below(17) == b.below(17));
    CHECK(a.normal() == b.normal());
  }
  Rng c(1);
  std::vector<int> counts(3);
  const double w[] = {0.0, 1.0, 3.0};
  for (int i = 0; i < 4000; ++i) ++counts[c.weighted(w)];
  CHECK(counts[0] == 0);
  CHECK(counts[2] > 2 * counts[1]);
}
