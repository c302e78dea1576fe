#include "pstraj/search/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "pstraj/error.hpp"
#include "pstraj/search/evaluate.hpp"

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include "httplib.h"

namespace pstraj::search {

namespace {

// Replacement subtrees stay small so one mutation is a local change.
constexpr std::size_t kReplacementDepth = 3;

Expr with_unary(const Expr& node, UnaryOp op) { return Expr::unary(op, node.child()); }
Expr with_binary(const Expr& node, BinaryOp op) { return Expr::binary(op, node.left(), node.right()); }

}  // namespace

Mutator::Mutator(std::uint64_t seed, std::size_t max_depth) : rng_(seed), max_depth_(max_depth) {}

Expr Mutator::subtree_replace(const Expr& e) {
  const std::size_t at = rng_.below(e.size());
  const std::size_t room = max_depth_ + 1 - std::min(max_depth_, depth_at(e, at));
  return replace_at(e, at, random_expr(rng_, std::min(kReplacementDepth, room)));
}

std::optional<Expr> Mutator::perturb_constant(const Expr& e) {
  const auto nodes = preorder(e);
  std::vector<std::size_t> consts;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].kind() == Expr::Kind::Const) consts.push_back(i);
  }
  if (consts.empty()) return std::nullopt;
  const std::size_t at = consts[rng_.below(consts.size())];
  const double v = nodes[at].value();
  // a zero constant would otherwise never move
  const double sigma = 0.2 * std::max(std::abs(v), 0.05);
  return replace_at(e, at, Expr::constant(round_constant(rng_.normal(v, sigma))));
}

std::optional<Expr> Mutator::swap_operator(const Expr& e) {
  const auto nodes = preorder(e);
  std::vector<std::size_t> ops;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto k = nodes[i].kind();
    if (k == Expr::Kind::Unary || k == Expr::Kind::Binary) ops.push_back(i);
  }
  if (ops.empty()) return std::nullopt;
  const std::size_t at = ops[rng_.below(ops.size())];
  const Expr& node = nodes[at];
  if (node.kind() == Expr::Kind::Unary) {
    const auto cur = static_cast<std::size_t>(node.unary_op());
    const auto next = (cur + 1 + rng_.below(kUnaryOpCount - 1)) % kUnaryOpCount;
    return replace_at(e, at, with_unary(node, static_cast<UnaryOp>(next)));
  }
  const auto cur = static_cast<std::size_t>(node.binary_op());
  const auto next = (cur + 1 + rng_.below(kBinaryOpCount - 1)) % kBinaryOpCount;
  return replace_at(e, at, with_binary(node, static_cast<BinaryOp>(next)));
}

Expr Mutator::crossover(const Expr& host, const Expr& donor) {
  const std::size_t at = rng_.below(host.size());
  const std::size_t room = max_depth_ + 1 - std::min(max_depth_, depth_at(host, at));
  const auto pieces = preorder(donor);
  std::vector<std::size_t> fits;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].depth() <= room) fits.push_back(i);
  }
  // leaves always fit, so `fits` is never empty
  return replace_at(host, at, pieces[fits[rng_.below(fits.size())]]);
}

Expr Mutator::apply(Op op, const Expr& a, const Expr& b) {
  switch (op) {
    case Op::SubtreeReplace: return subtree_replace(a);
    case Op::PerturbConstant:
      if (auto r = perturb_constant(a)) return *r;
      break;
    case Op::SwapOperator:
      if (auto r = swap_operator(a)) return *r;
      break;
    case Op::Crossover: return crossover(a, b);
  }
  return subtree_replace(a);
}

std::vector<AlgorithmSpec> Mutator::generate(std::span<const ScoredAlgorithm> parents, std::size_t count) {
  if (parents.empty() || parents.size() > 5) throw Error(Errc::BadConfig, "generators take 1 to 5 parents");
  std::vector<AlgorithmSpec> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const auto op = static_cast<Op>(rng_.below(4));
    const std::size_t ia = rng_.below(parents.size());
    std::size_t ib = ia;
    if (parents.size() > 1) ib = (ia + 1 + rng_.below(parents.size() - 1)) % parents.size();
    out.push_back(AlgorithmSpec::dsl(apply(op, parents[ia].spec.expr(), parents[ib].spec.expr())));
  }
  return out;
}

std::string render_prompt(std::span<const ScoredAlgorithm> parents) {
  std::vector<const ScoredAlgorithm*> order;
  for (const auto& p : parents) order.push_back(&p);
  std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->fitness > b->fitness; });

  std::string s =
      "We build traveling-salesman tours greedily. At each step every unvisited city is scored by an "
      "expression and the city with the LOWEST score is visited next (ties go to the lowest city id).\n\n"
      "Expressions are S-expressions:\n"
      "  (const <number>)\n  (feat <name>)\n  (<unary> <expr>)\n  (<binary> <expr> <expr>)\n"
      "Features of a candidate city:";
  for (std::size_t f = 0; f < kFeatureCount; ++f) s += std::string(" ") += feature_name(static_cast<FeatureId>(f));
  s += "\nUnary operators:";
  for (std::size_t u = 0; u < kUnaryOpCount; ++u) s += std::string(" ") += unary_name(static_cast<UnaryOp>(u));
  s += "\nBinary operators:";
  for (std::size_t b = 0; b < kBinaryOpCount; ++b) s += std::string(" ") += binary_name(static_cast<BinaryOp>(b));
  s += "\nMaximum depth: " + std::to_string(kDefaultMaxDepth) + ".\n\n";
  s += "Here are existing heuristics with their mean relative gap to the optimal tour (lower is better). "
       "Each one performs better than the one before it.\n\n";
  char gap[32];
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::snprintf(gap, sizeof gap, "%.6f", order[i]->fitness);
    s += "Heuristic " + std::to_string(i + 1) + " (gap " + gap + "):\n" + order[i]->spec.display_text + "\n\n";
  }
  s += "Write one new heuristic that performs better than the last one. Reply with a single S-expression and "
       "nothing else.\n";
  return s;
}

LlmHttpGenerator::LlmHttpGenerator(LlmConfig cfg) : cfg_(std::move(cfg)) {
  const char* tok = std::getenv(cfg_.api_key_env.c_str());
  if (tok == nullptr || *tok == '\0') {
    throw Error(Errc::GeneratorUnavailable, "environment variable " + cfg_.api_key_env + " is not set");
  }
  token_ = tok;
}

std::optional<std::string> LlmHttpGenerator::reply_text(const std::string& body) {
  const auto j = Json::parse(body, nullptr, false);
  if (j.is_discarded()) return std::nullopt;
  try {
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

std::string LlmHttpGenerator::post(const std::string& body) {
  httplib::Client cli(cfg_.base_url);
  const auto secs = static_cast<time_t>(std::ceil(cfg_.timeout_s));
  cli.set_connection_timeout(secs, 0);
  cli.set_read_timeout(secs, 0);
  cli.set_write_timeout(secs, 0);
  cli.set_bearer_token_auth(token_);
  const auto res = cli.Post(cfg_.path, body, "application/json");
  if (!res) throw Error(Errc::GeneratorUnavailable, "request failed: " + httplib::to_string(res.error()));
  if (res->status != 200) throw Error(Errc::GeneratorUnavailable, "endpoint answered HTTP " + std::to_string(res->status));
  return res->body;
}

std::vector<AlgorithmSpec> LlmHttpGenerator::generate(std::span<const ScoredAlgorithm> parents, std::size_t count) {
  if (parents.empty() || parents.size() > 5) throw Error(Errc::BadConfig, "generators take 1 to 5 parents");
  const Json request = {{"model", cfg_.model}, {"messages", Json::array({{{"role", "user"}, {"content", render_prompt(parents)}}})}};
  const std::string body = request.dump();

  std::vector<AlgorithmSpec> out;
  for (std::size_t k = 0; k < count; ++k) {
    bool reached = false;
    std::string last_error;
    for (std::size_t attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
      std::string reply;
      try {
        reply = post(body);
      } catch (const Error& e) {
        last_error = e.what();
        continue;
      }
      reached = true;
      const auto text = reply_text(reply);
      const auto expr = text ? extract_sexpr(*text) : std::nullopt;
      if (expr && expr->depth() <= kDefaultMaxDepth) {
        out.push_back(AlgorithmSpec::dsl(*expr));
        break;
      }
      ++parse_failures_;
    }
    if (!reached) throw Error(Errc::GeneratorUnavailable, "no usable response after retries: " + last_error);
  }
  return out;
}

std::unique_ptr<CandidateGenerator> make_generator(const SearchConfig& cfg) {
  if (const auto* m = std::get_if<MutatorConfig>(&cfg.generator)) return std::make_unique<Mutator>(m->seed, cfg.max_depth);
  return std::make_unique<LlmHttpGenerator>(std::get<LlmConfig>(cfg.generator));
}

}  // namespace pstraj::search
