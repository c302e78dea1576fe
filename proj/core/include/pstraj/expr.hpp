#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pstraj {

/// Per-candidate-node features available to a next-node scoring heuristic.
enum class FeatureId : std::uint8_t {
  DistToCurrent,
  DistToDestination,
  MeanDistToUnvisited,
  MinDistToUnvisited,
  RemainingCount,
  DistCurrentToDestination,
};

inline constexpr std::size_t kFeatureCount = 6;

using FeatureValues = std::array<std::optional<double>, kFeatureCount>;

std::string_view feature_name(FeatureId id) noexcept;
std::optional<FeatureId> parse_feature(std::string_view name) noexcept;

enum class UnaryOp : std::uint8_t { Neg, Abs, SqrtSafe, Log1pSafe };
enum class BinaryOp : std::uint8_t { Add, Sub, Mul, DivSafe, Min, Max };

inline constexpr std::size_t kUnaryOpCount = 4;
inline constexpr std::size_t kBinaryOpCount = 6;

std::string_view unary_name(UnaryOp op) noexcept;
std::string_view binary_name(BinaryOp op) noexcept;

/// Intermediate results saturate here so every tree evaluates to a finite value.
inline constexpr double kExprSaturation = 1e150;
/// div_safe returns its numerator when the denominator magnitude is below this.
inline constexpr double kDivEpsilon = 1e-9;
inline constexpr std::size_t kDefaultMaxDepth = 8;

/// Immutable expression tree. Copies share structure.
class Expr {
 public:
  enum class Kind : std::uint8_t { Const, Feature, Unary, Binary };

  static Expr constant(double value);
  static Expr feature(FeatureId id);
  static Expr unary(UnaryOp op, Expr child);
  static Expr binary(BinaryOp op, Expr left, Expr right);

  [[nodiscard]] Kind kind() const noexcept;
  [[nodiscard]] double value() const;
  [[nodiscard]] FeatureId feature_id() const;
  [[nodiscard]] UnaryOp unary_op() const;
  [[nodiscard]] BinaryOp binary_op() const;
  [[nodiscard]] const Expr& child() const;
  [[nodiscard]] const Expr& left() const;
  [[nodiscard]] const Expr& right() const;

  /// Node count.
  [[nodiscard]] std::size_t size() const noexcept;
  /// A single leaf has depth 1.
  [[nodiscard]] std::size_t depth() const noexcept;

  /// Structural equality; constants compare by exact value.
  bool operator==(const Expr& other) const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Throws MissingFeature when a referenced feature is absent.
double expr_eval(const Expr& e, const FeatureValues& features);

/// Canonical S-expression, e.g. "(add (feat dist_to_current) (const 0.1))".
/// Constants use 6 significant digits.
std::string to_sexpr(const Expr& e);

/// Parses the S-expression grammar; accepts a few operator aliases
/// (div, sqrt, log1p, feature). Throws ParseFailure.
Expr parse_sexpr(std::string_view text);

/// Finds the first balanced "(...)" in free text that parses as an Expr.
std::optional<Expr> extract_sexpr(std::string_view text);

/// Nodes in preorder; index 0 is the root.
std::vector<Expr> preorder(const Expr& e);

/// Depth of the node at preorder position `index` (root = 1).
std::size_t depth_at(const Expr& e, std::size_t index);

/// Returns a copy of `root` with the preorder node `index` replaced.
Expr replace_at(const Expr& root, std::size_t index, const Expr& replacement);

}  // namespace pstraj
