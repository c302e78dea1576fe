#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pstraj/expr.hpp"
#include "pstraj/types.hpp"

namespace pstraj {

/// Splits text into identifier/number words and single punctuation tokens.
std::vector<std::string> tokenize(std::string_view text);

struct ZooRef {
  std::string name;
  bool operator==(const ZooRef&) const = default;
};

struct DslRef {
  Expr expr;
  bool operator==(const DslRef&) const = default;
};

/// A comparable algorithm: a reference implementation or a scoring heuristic.
struct AlgorithmSpec {
  std::variant<ZooRef, DslRef> kind;
  std::string display_text;
  std::size_t length_tokens = 0;

  /// display_text must be the zoo entry's pseudocode.
  static AlgorithmSpec zoo(std::string name, std::string pseudocode);
  static AlgorithmSpec dsl(Expr expr);

  [[nodiscard]] bool is_dsl() const noexcept { return std::holds_alternative<DslRef>(kind); }
  [[nodiscard]] const Expr& expr() const;
  /// Zoo name, or the display text for DSL heuristics.
  [[nodiscard]] std::string id() const;

  bool operator==(const AlgorithmSpec&) const = default;
};

/// An evaluated algorithm together with its behavioral fingerprint.
struct ScoredAlgorithm {
  AlgorithmSpec spec;
  double fitness = 0.0;
  std::vector<PSTraj> trajs;
  std::uint64_t eval_count_at_birth = 0;
};

}  // namespace pstraj
