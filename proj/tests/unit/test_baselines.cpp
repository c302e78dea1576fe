#include <cmath>
#include <map>

#include "doctest.h"
#include "oracles.hpp"
#include "pstraj/baselines.hpp"
#include "pstraj/error.hpp"
#include "pstraj/rng.hpp"
#include "pstraj/zoo/zoo.hpp"

using namespace pstraj;

namespace {

using Tokens = std::vector<std::string>;

// Clipped n-gram precision of `cand` against `ref`, counted with maps.
double precision(const Tokens& cand, const Tokens& ref, std::size_t n) {
  std::map<Tokens, int> have, want;
  for (std::size_t i = 0; i + n <= ref.size(); ++i) ++have[Tokens(ref.begin() + i, ref.begin() + i + n)];
  for (std::size_t i = 0; i + n <= cand.size(); ++i) ++want[Tokens(cand.begin() + i, cand.begin() + i + n)];
  double hit = 0, total = 0;
  for (const auto& [g, c] : want) {
    total += c;
    hit += std::min(c, have[g]);
  }
  return hit / total;
}

double reference_ngram(const Tokens& a, const Tokens& b, std::size_t max_n) {
  const std::size_t top = std::min({max_n, a.size(), b.size()});
  const auto directed = [&](const Tokens& x, const Tokens& y) {
    double log_sum = 0;
    for (std::size_t n = 1; n <= top; ++n) {
      const double p = precision(x, y, n);
      if (p == 0) return 0.0;
      log_sum += std::log(p);
    }
    return std::exp(log_sum / static_cast<double>(top));
  };
  return 0.5 * (directed(a, b) + directed(b, a));
}

Tokens random_tokens(Rng& rng, std::size_t max_len) {
  const char* vocab[] = {"a", "b", "c", "(", ")"};
  Tokens t(1 + rng.below(max_len));
  for (auto& s : t) s = vocab[rng.below(5)];
  return t;
}

Expr small_tree(Rng& rng, std::size_t budget) {
  // budget caps the node count; labels come from a tiny alphabet so that
  // matches and relabels both happen often
  if (budget <= 1 || rng.bernoulli(0.3)) {
    return rng.bernoulli(0.5) ? Expr::feature(static_cast<FeatureId>(rng.below(2))) : Expr::constant(static_cast<double>(rng.below(2)));
  }
  if (budget == 2 || rng.bernoulli(0.4)) return Expr::unary(static_cast<UnaryOp>(rng.below(2)), small_tree(rng, budget - 1));
  const std::size_t left = 1 + rng.below(budget - 2);
  return Expr::binary(static_cast<BinaryOp>(rng.below(2)), small_tree(rng, left), small_tree(rng, budget - 1 - left));
}

}  // namespace

TEST_CASE("ngram examples") {
  const Tokens a{"for", "x", "in", "xs", ":"};
  CHECK(ngram_sim(a, a) == 1.0);
  CHECK(ngram_sim(a, Tokens{"while", "y"}) == 0.0);
  CHECK_THROWS_WITH_AS(ngram_sim(a, Tokens{}), doctest::Contains("EmptyStream"), Error);
  CHECK(ngram_sim(zoo::spec("dfs_left"), zoo::spec("dfs_right")) > 0.9);
}

TEST_CASE("ngram agrees with a map-based count") {
  Rng rng(3);
  for (int k = 0; k < 500; ++k) {
    const auto a = random_tokens(rng, 12);
    const auto b = random_tokens(rng, 12);
    CHECK(ngram_sim(a, b) == doctest::Approx(reference_ngram(a, b, 4)).epsilon(1e-12));
    CHECK(ngram_sim(a, b, 2) == doctest::Approx(reference_ngram(a, b, 2)).epsilon(1e-12));
    CHECK(ngram_sim(a, b) == ngram_sim(b, a));
    CHECK((ngram_sim(a, b) == 1.0) == (a == b));
  }
}

TEST_CASE("shipped pseudocode reproduces the text-similarity inversion") {
  std::map<zoo::PairType, std::pair<double, int>> acc;
  for (const auto& p : zoo::dataset_pairs()) {
    auto& [sum, n] = acc[p.type_tag];
    sum += ngram_sim(zoo::spec(p.left), zoo::spec(p.right));
    ++n;
  }
  const auto mean = [&](zoo::PairType t) { return acc[t].first / acc[t].second; };
  CHECK(mean(zoo::PairType::T1) > mean(zoo::PairType::T3) + 0.05);
  CHECK(mean(zoo::PairType::T2) > mean(zoo::PairType::T4) + 0.05);
}

TEST_CASE("tree edit similarity examples") {
  const auto e = parse_sexpr("(add (feat dist_to_current) (const 0.5))");
  CHECK(tree_edit_sim(e, e) == 1.0);
  CHECK(tree_edit_sim(Expr::constant(1), Expr::constant(2)) == 0.0);
  CHECK(tree_edit_distance(e, parse_sexpr("(sub (feat dist_to_current) (const 0.5))")) == 1);
  CHECK(tree_edit_distance(e, parse_sexpr("(neg (add (feat dist_to_current) (const 0.5)))")) == 1);
  CHECK_THROWS_WITH_AS(tree_edit_sim(zoo::spec("bubble_sort"), AlgorithmSpec::dsl(e)), doctest::Contains("NotDsl"), Error);
}

TEST_CASE("tree edit distance matches the forest recursion on small trees") {
  Rng rng(9);
  for (int k = 0; k < 1500; ++k) {
    const auto a = small_tree(rng, 1 + rng.below(5));
    const auto b = small_tree(rng, 1 + rng.below(5));
    REQUIRE(a.size() <= 5);
    REQUIRE(b.size() <= 5);
    const auto d = tree_edit_distance(a, b);
    CHECK(d == oracle::tree_edit_distance(a, b));
    CHECK(d == tree_edit_distance(b, a));
    CHECK((d == 0) == (a == b));
    CHECK(tree_edit_sim(a, b) == doctest::Approx(1.0 - static_cast<double>(d) / static_cast<double>(std::max(a.size(), b.size()))));
  }
}
