#include "pstraj/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "pstraj/error.hpp"

namespace pstraj {

struct Expr::Node {
  Kind kind = Kind::Const;
  double value = 0.0;
  FeatureId feature = FeatureId::DistToCurrent;
  std::uint8_t op = 0;
  std::optional<Expr> a;
  std::optional<Expr> b;
  std::size_t size = 1;
  std::size_t depth = 1;
};

namespace {

constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "dist_to_current",       "dist_to_destination",        "mean_dist_to_unvisited",
    "min_dist_to_unvisited", "remaining_count",            "dist_current_to_destination",
};
constexpr std::array<std::string_view, kUnaryOpCount> kUnaryNames = {"neg", "abs", "sqrt_safe", "log1p_safe"};
constexpr std::array<std::string_view, kBinaryOpCount> kBinaryNames = {"add", "sub", "mul", "div_safe", "min", "max"};

double saturate(double x) {
  if (std::isnan(x)) return 0.0;
  return std::clamp(x, -kExprSaturation, kExprSaturation);
}

}  // namespace

std::string_view feature_name(FeatureId id) noexcept { return kFeatureNames[static_cast<std::size_t>(id)]; }

std::optional<FeatureId> parse_feature(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kFeatureNames.size(); ++i) {
    if (kFeatureNames[i] == name) return static_cast<FeatureId>(i);
  }
  return std::nullopt;
}

std::string_view unary_name(UnaryOp op) noexcept { return kUnaryNames[static_cast<std::size_t>(op)]; }
std::string_view binary_name(BinaryOp op) noexcept { return kBinaryNames[static_cast<std::size_t>(op)]; }

Expr Expr::constant(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::feature(FeatureId id) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Feature;
  n->feature = id;
  return Expr(std::move(n));
}

Expr Expr::unary(UnaryOp op, Expr child) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Unary;
  n->op = static_cast<std::uint8_t>(op);
  n->size = 1 + child.size();
  n->depth = 1 + child.depth();
  n->a = std::move(child);
  return Expr(std::move(n));
}

Expr Expr::binary(BinaryOp op, Expr left, Expr right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Binary;
  n->op = static_cast<std::uint8_t>(op);
  n->size = 1 + left.size() + right.size();
  n->depth = 1 + std::max(left.depth(), right.depth());
  n->a = std::move(left);
  n->b = std::move(right);
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }

double Expr::value() const {
  if (node_->kind != Kind::Const) throw std::logic_error("Expr::value on non-constant");
  return node_->value;
}

FeatureId Expr::feature_id() const {
  if (node_->kind != Kind::Feature) throw std::logic_error("Expr::feature_id on non-feature");
  return node_->feature;
}

UnaryOp Expr::unary_op() const {
  if (node_->kind != Kind::Unary) throw std::logic_error("Expr::unary_op on non-unary");
  return static_cast<UnaryOp>(node_->op);
}

BinaryOp Expr::binary_op() const {
  if (node_->kind != Kind::Binary) throw std::logic_error("Expr::binary_op on non-binary");
  return static_cast<BinaryOp>(node_->op);
}

const Expr& Expr::child() const {
  if (node_->kind != Kind::Unary) throw std::logic_error("Expr::child on non-unary");
  return *node_->a;
}

const Expr& Expr::left() const {
  if (node_->kind != Kind::Binary) throw std::logic_error("Expr::left on non-binary");
  return *node_->a;
}

const Expr& Expr::right() const {
  if (node_->kind != Kind::Binary) throw std::logic_error("Expr::right on non-binary");
  return *node_->b;
}

std::size_t Expr::size() const noexcept { return node_->size; }
std::size_t Expr::depth() const noexcept { return node_->depth; }

bool Expr::operator==(const Expr& other) const {
  if (node_ == other.node_) return true;
  const Node& x = *node_;
  const Node& y = *other.node_;
  if (x.kind != y.kind || x.size != y.size) return false;
  switch (x.kind) {
    case Kind::Const: return x.value == y.value;
    case Kind::Feature: return x.feature == y.feature;
    case Kind::Unary: return x.op == y.op && *x.a == *y.a;
    case Kind::Binary: return x.op == y.op && *x.a == *y.a && *x.b == *y.b;
  }
  return false;
}

double expr_eval(const Expr& e, const FeatureValues& features) {
  switch (e.kind()) {
    case Expr::Kind::Const: return saturate(e.value());
    case Expr::Kind::Feature: {
      const auto& v = features[static_cast<std::size_t>(e.feature_id())];
      if (!v) throw Error(Errc::MissingFeature, std::string(feature_name(e.feature_id())));
      return saturate(*v);
    }
    case Expr::Kind::Unary: {
      const double x = expr_eval(e.child(), features);
      switch (e.unary_op()) {
        case UnaryOp::Neg: return -x;
        case UnaryOp::Abs: return std::abs(x);
        case UnaryOp::SqrtSafe: return std::sqrt(std::abs(x));
        case UnaryOp::Log1pSafe: return std::log1p(std::abs(x));
      }
      break;
    }
    case Expr::Kind::Binary: {
      const double x = expr_eval(e.left(), features);
      const double y = expr_eval(e.right(), features);
      switch (e.binary_op()) {
        case BinaryOp::Add: return saturate(x + y);
        case BinaryOp::Sub: return saturate(x - y);
        case BinaryOp::Mul: return saturate(x * y);
        case BinaryOp::DivSafe: return std::abs(y) < kDivEpsilon ? x : saturate(x / y);
        case BinaryOp::Min: return std::min(x, y);
        case BinaryOp::Max: return std::max(x, y);
      }
      break;
    }
  }
  return 0.0;
}

namespace {

void write_sexpr(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case Expr::Kind::Const: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6g", e.value());
      out += "(const ";
      out += buf;
      out += ')';
      return;
    }
    case Expr::Kind::Feature:
      out += "(feat ";
      out += feature_name(e.feature_id());
      out += ')';
      return;
    case Expr::Kind::Unary:
      out += '(';
      out += unary_name(e.unary_op());
      out += ' ';
      write_sexpr(e.child(), out);
      out += ')';
      return;
    case Expr::Kind::Binary:
      out += '(';
      out += binary_name(e.binary_op());
      out += ' ';
      write_sexpr(e.left(), out);
      out += ' ';
      write_sexpr(e.right(), out);
      out += ')';
      return;
  }
}

class SexprParser {
 public:
  explicit SexprParser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    Expr e = parse_node(1);
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return e;
  }

 private:
  static constexpr std::size_t kMaxNesting = 64;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::ParseFailure, what + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view atom() {
    skip_ws();
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')') {
      ++pos_;
    }
    if (begin == pos_) fail("expected atom");
    return text_.substr(begin, pos_ - begin);
  }

  Expr parse_node(std::size_t nesting) {
    if (nesting > kMaxNesting) fail("nesting too deep");
    expect('(');
    const std::string_view head = atom();
    Expr result = Expr::constant(0.0);
    if (head == "const") {
      const std::string num(atom());
      char* end = nullptr;
      const double v = std::strtod(num.c_str(), &end);
      if (end != num.c_str() + num.size() || !std::isfinite(v)) fail("bad constant '" + num + "'");
      result = Expr::constant(v);
    } else if (head == "feat" || head == "feature") {
      const std::string_view name = atom();
      const auto id = parse_feature(name);
      if (!id) fail("unknown feature '" + std::string(name) + "'");
      result = Expr::feature(*id);
    } else if (auto u = unary_from(head)) {
      result = Expr::unary(*u, parse_node(nesting + 1));
    } else if (auto b = binary_from(head)) {
      Expr l = parse_node(nesting + 1);
      Expr r = parse_node(nesting + 1);
      result = Expr::binary(*b, std::move(l), std::move(r));
    } else {
      fail("unknown operator '" + std::string(head) + "'");
    }
    expect(')');
    return result;
  }

  static std::optional<UnaryOp> unary_from(std::string_view s) {
    for (std::size_t i = 0; i < kUnaryNames.size(); ++i) {
      if (kUnaryNames[i] == s) return static_cast<UnaryOp>(i);
    }
    if (s == "sqrt") return UnaryOp::SqrtSafe;
    if (s == "log1p") return UnaryOp::Log1pSafe;
    return std::nullopt;
  }

  static std::optional<BinaryOp> binary_from(std::string_view s) {
    for (std::size_t i = 0; i < kBinaryNames.size(); ++i) {
      if (kBinaryNames[i] == s) return static_cast<BinaryOp>(i);
    }
    if (s == "div") return BinaryOp::DivSafe;
    return std::nullopt;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void collect(const Expr& e, std::vector<Expr>& out) {
  out.push_back(e);
  switch (e.kind()) {
    case Expr::Kind::Unary: collect(e.child(), out); break;
    case Expr::Kind::Binary:
      collect(e.left(), out);
      collect(e.right(), out);
      break;
    default: break;
  }
}

// Walks preorder positions; `index` counts down as nodes are passed.
Expr replace_walk(const Expr& e, std::size_t& index, const Expr& replacement) {
  if (index == 0) {
    index = static_cast<std::size_t>(-1);
    return replacement;
  }
  if (index == static_cast<std::size_t>(-1)) return e;
  --index;
  switch (e.kind()) {
    case Expr::Kind::Unary: {
      Expr c = replace_walk(e.child(), index, replacement);
      return Expr::unary(e.unary_op(), std::move(c));
    }
    case Expr::Kind::Binary: {
      Expr l = replace_walk(e.left(), index, replacement);
      Expr r = replace_walk(e.right(), index, replacement);
      return Expr::binary(e.binary_op(), std::move(l), std::move(r));
    }
    default: return e;
  }
}

bool depth_walk(const Expr& e, std::size_t& index, std::size_t depth, std::size_t& found) {
  if (index == 0) {
    found = depth;
    return true;
  }
  --index;
  switch (e.kind()) {
    case Expr::Kind::Unary: return depth_walk(e.child(), index, depth + 1, found);
    case Expr::Kind::Binary:
      return depth_walk(e.left(), index, depth + 1, found) || depth_walk(e.right(), index, depth + 1, found);
    default: return false;
  }
}

}  // namespace

std::string to_sexpr(const Expr& e) {
  std::string out;
  write_sexpr(e, out);
  return out;
}

Expr parse_sexpr(std::string_view text) { return SexprParser(text).parse_all(); }

std::optional<Expr> extract_sexpr(std::string_view text) {
  for (std::size_t start = text.find('('); start != std::string_view::npos; start = text.find('(', start + 1)) {
    int balance = 0;
    for (std::size_t i = start; i < text.size(); ++i) {
      if (text[i] == '(') ++balance;
      if (text[i] == ')' && --balance == 0) {
        try {
          return parse_sexpr(text.substr(start, i - start + 1));
        } catch (const Error&) {
          break;
        }
      }
    }
  }
  return std::nullopt;
}

std::vector<Expr> preorder(const Expr& e) {
  std::vector<Expr> out;
  out.reserve(e.size());
  collect(e, out);
  return out;
}

std::size_t depth_at(const Expr& e, std::size_t index) {
  if (index >= e.size()) throw std::out_of_range("depth_at: index past tree size");
  std::size_t found = 0;
  depth_walk(e, index, 1, found);
  return found;
}

Expr replace_at(const Expr& root, std::size_t index, const Expr& replacement) {
  if (index >= root.size()) throw std::out_of_range("replace_at: index past tree size");
  return replace_walk(root, index, replacement);
}

}  // namespace pstraj
