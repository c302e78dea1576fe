#include "pstraj/algorithm.hpp"

#include <cctype>

#include "pstraj/error.hpp"

namespace pstraj {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string word;
  const auto flush = [&] {
    if (!word.empty()) tokens.push_back(std::move(word));
    word.clear();
  };
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || ch == '_' || ch == '.') {
      word += ch;
    } else {
      flush();
      if (!std::isspace(c)) tokens.emplace_back(1, ch);
    }
  }
  flush();
  return tokens;
}

AlgorithmSpec AlgorithmSpec::zoo(std::string name, std::string pseudocode) {
  AlgorithmSpec s;
  s.length_tokens = tokenize(pseudocode).size();
  s.display_text = std::move(pseudocode);
  s.kind = ZooRef{std::move(name)};
  return s;
}

AlgorithmSpec AlgorithmSpec::dsl(Expr expr) {
  AlgorithmSpec s;
  s.display_text = to_sexpr(expr);
  s.length_tokens = tokenize(s.display_text).size();
  s.kind = DslRef{std::move(expr)};
  return s;
}

const Expr& AlgorithmSpec::expr() const {
  if (const auto* d = std::get_if<DslRef>(&kind)) return d->expr;
  throw Error(Errc::NotDsl, "zoo algorithm '" + std::get<ZooRef>(kind).name + "' has no expression tree");
}

std::string AlgorithmSpec::id() const {
  if (const auto* z = std::get_if<ZooRef>(&kind)) return z->name;
  return display_text;
}

}  // namespace pstraj
