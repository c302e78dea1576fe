#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pstraj/algorithm.hpp"
#include "pstraj/rng.hpp"
#include "pstraj/search/config.hpp"

namespace pstraj::search {

class CandidateGenerator {
 public:
  virtual ~CandidateGenerator() = default;
  /// Up to `count` offspring of 1..5 parents.
  virtual std::vector<AlgorithmSpec> generate(std::span<const ScoredAlgorithm> parents, std::size_t count) = 0;
  /// Replies that did not contain a usable expression so far.
  [[nodiscard]] virtual std::size_t parse_failures() const noexcept { return 0; }
};

/// Seeded structural mutations over the expression grammar.
class Mutator final : public CandidateGenerator {
 public:
  enum class Op { SubtreeReplace, PerturbConstant, SwapOperator, Crossover };

  explicit Mutator(std::uint64_t seed, std::size_t max_depth = kDefaultMaxDepth);

  std::vector<AlgorithmSpec> generate(std::span<const ScoredAlgorithm> parents, std::size_t count) override;

  Expr subtree_replace(const Expr& e);
  /// nullopt when the tree has no constants.
  std::optional<Expr> perturb_constant(const Expr& e);
  /// nullopt when the tree has no operator nodes.
  std::optional<Expr> swap_operator(const Expr& e);
  /// A subtree of `donor` grafted into `host`, within the depth cap.
  Expr crossover(const Expr& host, const Expr& donor);

  /// Applies `op`, falling back to subtree replacement when it does not apply.
  Expr apply(Op op, const Expr& a, const Expr& b);

 private:
  Rng rng_;
  std::size_t max_depth_;
};

/// Prompt text listing the parents worst first, so the last one shown is the best.
std::string render_prompt(std::span<const ScoredAlgorithm> parents);

/// Asks a chat endpoint for new heuristics. Construction fails with
/// GeneratorUnavailable when the token variable is unset.
class LlmHttpGenerator final : public CandidateGenerator {
 public:
  explicit LlmHttpGenerator(LlmConfig cfg);

  /// Throws GeneratorUnavailable when every attempt fails at the HTTP level.
  std::vector<AlgorithmSpec> generate(std::span<const ScoredAlgorithm> parents, std::size_t count) override;
  [[nodiscard]] std::size_t parse_failures() const noexcept override { return parse_failures_; }

  /// The assistant text of a chat-completions response body, if present.
  static std::optional<std::string> reply_text(const std::string& body);

 private:
  std::string post(const std::string& body);

  LlmConfig cfg_;
  std::string token_;
  std::size_t parse_failures_ = 0;
};

std::unique_ptr<CandidateGenerator> make_generator(const SearchConfig& cfg);

}  // namespace pstraj::search
