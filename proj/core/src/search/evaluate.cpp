#include "pstraj/search/evaluate.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "pstraj/error.hpp"
#include "pstraj/zoo/tsp.hpp"
#include "pstraj/zoo/zoo.hpp"

namespace pstraj::search {

namespace {

std::uint32_t start_city(const ProblemInstance& inst, std::string_view start_id) {
  const auto& s = inst.start(start_id);
  if (const auto* c = std::get_if<std::uint32_t>(&s.value)) return *c;
  throw Error(Errc::BadStart, "start '" + s.id + "' is not a city index");
}

}  // namespace

ScoredAlgorithm evaluate_candidate(const AlgorithmSpec& spec, const FingerprintSet& fp, const InstanceRegistry& reg,
                                   double timeout_s) {
  validate_fingerprint(fp);
  const auto deadline =
      std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                             std::chrono::duration<double>(timeout_s));
  ScoredAlgorithm out;
  out.spec = spec;
  double gap_sum = 0.0;
  for (const auto& [inst_id, start_id] : fp.pairs) {
    const auto& inst = reg.get(inst_id);
    if (inst.task != Task::Tsp) throw Error(Errc::TaskMismatch, "candidates are scored on Tsp instances only");
    const auto& dist = std::get<TspData>(inst.data).dist;
    for (auto seed : fp.seeds) {
      PSTraj t;
      if (spec.is_dsl()) {
        t.steps = zoo::construct_tour(dist, start_city(inst, start_id), spec.expr(), deadline).steps;
        t.meta = {spec.id(), inst.id, start_id, seed};
      } else {
        t = zoo::run_algorithm(spec, inst, start_id, seed);
        if (std::chrono::steady_clock::now() > deadline) throw Error(Errc::Timeout, "candidate exceeded its time budget");
      }
      const auto* tour = std::get_if<PermSeq>(&t.steps.back().payload);
      if (tour == nullptr || tour->items.size() != dist.rows) {
        throw Error(Errc::EvaluationFailure, "candidate did not visit every city of '" + inst.id + "'");
      }
      const double opt = reg.tsp_optimum(inst.id);
      // Held-Karp adds edges in another order, so a tie can land a hair below zero.
      gap_sum += std::max(0.0, (zoo::tour_length(dist, tour->items) - opt) / opt);
      out.trajs.push_back(std::move(t));
    }
  }
  out.fitness = gap_sum / static_cast<double>(out.trajs.size());
  return out;
}

double round_constant(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;  // no negative zero
}

Expr random_expr(Rng& rng, std::size_t max_depth) {
  if (max_depth <= 1 || rng.bernoulli(0.3)) {
    if (rng.bernoulli(0.7)) return Expr::feature(static_cast<FeatureId>(rng.below(kFeatureCount)));
    return Expr::constant(round_constant(rng.uniform(-1.0, 1.0)));
  }
  if (rng.bernoulli(0.3)) {
    const auto op = static_cast<UnaryOp>(rng.below(kUnaryOpCount));
    return Expr::unary(op, random_expr(rng, max_depth - 1));
  }
  const auto op = static_cast<BinaryOp>(rng.below(kBinaryOpCount));
  auto left = random_expr(rng, max_depth - 1);
  auto right = random_expr(rng, max_depth - 1);
  return Expr::binary(op, std::move(left), std::move(right));
}

}  // namespace pstraj::search
