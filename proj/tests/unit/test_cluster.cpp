#include <algorithm>
#include <numeric>
#include <regex>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "pstraj/behavesim.hpp"
#include "pstraj/cluster.hpp"
#include "pstraj/error.hpp"
#include "pstraj/rng.hpp"
#include "pstraj/search/config.hpp"

using namespace pstraj;

namespace {

Matrix random_sim(Rng& rng, std::size_t n) {
  Matrix m(n, n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) m(i, j) = m(j, i) = rng.uniform();
  }
  return m;
}

Matrix triple() {
  Matrix m(3, 3, 1.0);
  m(0, 1) = m(1, 0) = 0.1;
  m(0, 2) = m(2, 0) = 0.1;
  m(1, 2) = m(2, 1) = 0.9;  // dissimilarity 0.1 between 1 and 2
  return m;
}

// Leaf set under each merge, in merge order.
std::vector<std::set<std::size_t>> merge_sets(const Dendrogram& d) {
  const std::size_t n = d.leaves.size();
  std::vector<std::set<std::size_t>> under(2 * n);
  for (std::size_t i = 0; i < n; ++i) under[i] = {i};
  std::vector<std::set<std::size_t>> out;
  for (const auto& m : d.merges) {
    under[m.node] = under[m.left];
    under[m.node].insert(under[m.right].begin(), under[m.right].end());
    out.push_back(under[m.node]);
  }
  return out;
}

PSTraj line(std::vector<double> xs) {
  PSTraj t;
  for (double x : xs) t.steps.push_back(Solution::real({x}));
  return t;
}

}  // namespace

TEST_CASE("agglomerate examples") {
  Matrix clones(2, 2, 1.0);
  const auto d = agglomerate(clones);
  REQUIRE(d.merges.size() == 1);
  CHECK(d.merges[0] == Merge{0, 1, 0.0, 2});

  const auto t = agglomerate(triple());
  REQUIRE(t.merges.size() == 2);
  CHECK(t.merges[0].left == 1);
  CHECK(t.merges[0].right == 2);
  CHECK(t.merges[0].distance == doctest::Approx(0.1));
  CHECK(t.leaves == std::vector<std::string>{"0", "1", "2"});
}

TEST_CASE("agglomerate rejects malformed matrices") {
  Matrix m = triple();
  m(0, 1) = 0.3;
  CHECK_THROWS_WITH_AS(agglomerate(m), doctest::Contains("BadMatrix"), Error);
  m = triple();
  m(1, 1) = 0.9;
  CHECK_THROWS_AS(agglomerate(m), Error);
  m = triple();
  m(0, 2) = m(2, 0) = 1.5;
  CHECK_THROWS_AS(agglomerate(m), Error);
  CHECK_THROWS_AS(agglomerate(Matrix(2, 3, 1.0)), Error);
}

TEST_CASE("agglomerate matches the naive recomputing reference") {
  Rng rng(13);
  const std::pair<Linkage, oracle::RefLinkage> kinds[] = {{Linkage::Average, oracle::RefLinkage::Average},
                                                          {Linkage::Complete, oracle::RefLinkage::Complete},
                                                          {Linkage::Single, oracle::RefLinkage::Single}};
  for (int k = 0; k < 200; ++k) {
    const auto m = random_sim(rng, 6);
    for (const auto& [lib, ref] : kinds) {
      const auto got = agglomerate(m, lib);
      const auto want = oracle::agglomerate(m, ref);
      REQUIRE(got.merges.size() == want.size());
      for (std::size_t i = 0; i < want.size(); ++i) {
        CHECK(got.merges[i].left == want[i].left);
        CHECK(got.merges[i].right == want[i].right);
        CHECK(got.merges[i].distance == doctest::Approx(want[i].distance).epsilon(1e-12));
        CHECK(got.merges[i].node == 6 + i);
      }
      if (lib == Linkage::Average) {
        for (std::size_t i = 1; i < want.size(); ++i) CHECK(got.merges[i].distance >= got.merges[i - 1].distance - 1e-15);
      }
    }
  }
}

TEST_CASE("ties merge the smallest id pair first") {
  Matrix m(4, 4, 0.5);
  for (std::size_t i = 0; i < 4; ++i) m(i, i) = 1.0;
  const auto d = agglomerate(m);
  CHECK(d.merges[0] == Merge{0, 1, 0.5, 4});
  CHECK(d.merges[1] == Merge{2, 3, 0.5, 5});
}

TEST_CASE("relabeling the input relabels the output") {
  Rng rng(23);
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 7;
    const auto m = random_sim(rng, n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    Matrix p(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) p(i, j) = m(perm[i], perm[j]);
    }
    const auto a = merge_sets(agglomerate(m));
    auto b = merge_sets(agglomerate(p));
    for (auto& s : b) {
      std::set<std::size_t> mapped;
      for (auto x : s) mapped.insert(perm[x]);
      s = mapped;
    }
    CHECK(a == b);
  }
}

TEST_CASE("cut_k") {
  const auto d = agglomerate(triple());
  CHECK(cut_k(d, 3) == std::vector<std::vector<std::size_t>>{{0}, {1}, {2}});
  CHECK(cut_k(d, 1) == std::vector<std::vector<std::size_t>>{{0, 1, 2}});
  CHECK(cut_k(d, 2) == std::vector<std::vector<std::size_t>>{{0}, {1, 2}});
  CHECK_THROWS_WITH_AS(cut_k(d, 0), doctest::Contains("BadK"), Error);
  CHECK_THROWS_AS(cut_k(d, 4), Error);

  Rng rng(2);
  const auto big = agglomerate(random_sim(rng, 9));
  for (std::size_t k = 1; k <= 9; ++k) {
    const auto parts = cut_k(big, k);
    CHECK(parts.size() == k);
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    CHECK(total == 9);
  }
}

TEST_CASE("island distances") {
  const TrajSimConfig cfg;
  const std::vector<PSTraj> a{line({0})};
  const std::vector<PSTraj> b{line({0, 0.6})};  // similarity 0.4 to a
  const std::vector<PSTraj> c{line({0, 0.75})};  // similarity 0.25 to a

  const std::vector<std::vector<PSTraj>> same{a, a, a};
  CHECK(intra_island_distance(same, cfg) == 0.0);
  const std::vector<std::vector<PSTraj>> pair{a, b};
  CHECK(intra_island_distance(pair, cfg) == doctest::Approx(0.6));
  CHECK_THROWS_WITH_AS(intra_island_distance(std::span(pair).first(1), cfg), doctest::Contains("TooFewMembers"), Error);

  const std::vector<std::vector<PSTraj>> left{a}, right{c};
  CHECK(inter_island_distance(left, left, cfg) == 0.0);
  CHECK(inter_island_distance(left, right, cfg) == doctest::Approx(0.75));
  CHECK_THROWS_WITH_AS(inter_island_distance(left, {}, cfg), doctest::Contains("EmptyIsland"), Error);

  Rng rng(8);
  const auto member = [&] {
    std::vector<PSTraj> fp;
    for (int e = 0; e < 2; ++e) {
      std::vector<double> xs(1 + rng.below(5));
      for (auto& x : xs) x = rng.uniform();
      fp.push_back(line(xs));
    }
    return fp;
  };
  for (int k = 0; k < 20; ++k) {
    std::vector<std::vector<PSTraj>> four{member(), member(), member(), member()};
    double sum = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) sum += 1.0 - behave_sim_traj(four[i], four[j], cfg);
    }
    CHECK(intra_island_distance(four, cfg) == doctest::Approx(sum / 6.0).epsilon(1e-12));

    std::vector<std::vector<PSTraj>> x{member(), member(), member()}, y{member(), member()};
    double cross = 0;
    for (const auto& p : x) {
      for (const auto& q : y) cross += 1.0 - behave_sim_traj(p, q, cfg);
    }
    CHECK(inter_island_distance(x, y, cfg) == doctest::Approx(cross / 6.0).epsilon(1e-12));
  }
}

TEST_CASE("rank correlation") {
  const std::vector<double> x{0.1, 0.4, 0.2, 0.9, 0.5};
  const std::vector<double> rev{5, 4, 3, 2, 1}, inc{1, 2, 3, 4, 5};
  CHECK(rank_correlation(x, x, RankMethod::KendallTau) == doctest::Approx(1.0));
  CHECK(rank_correlation(x, x, RankMethod::Spearman) == doctest::Approx(1.0));
  CHECK(rank_correlation(inc, rev, RankMethod::KendallTau) == doctest::Approx(-1.0));
  CHECK(rank_correlation(inc, rev, RankMethod::Spearman) == doctest::Approx(-1.0));
  CHECK_THROWS_WITH_AS(rank_correlation(std::span(x).first(3), inc, RankMethod::KendallTau),
                       doctest::Contains("LengthMismatch"), Error);
  const std::vector<double> flat{2, 2, 2, 2, 2};
  CHECK_THROWS_WITH_AS(rank_correlation(flat, inc, RankMethod::Spearman), doctest::Contains("DegenerateConstantInput"), Error);

  Rng rng(19);
  for (int k = 0; k < 300; ++k) {
    std::vector<double> a(6), b(6);
    for (auto& v : a) v = static_cast<double>(rng.below(4));
    for (auto& v : b) v = static_cast<double>(rng.below(4));
    if (std::adjacent_find(a.begin(), a.end(), std::not_equal_to<>()) == a.end()) continue;
    if (std::adjacent_find(b.begin(), b.end(), std::not_equal_to<>()) == b.end()) continue;
    CHECK(rank_correlation(a, b, RankMethod::KendallTau) == doctest::Approx(oracle::kendall_tau_b(a, b)).epsilon(1e-12));
    CHECK(rank_correlation(a, b, RankMethod::Spearman) == doctest::Approx(oracle::spearman(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("dendrogram exports round trip") {
  Rng rng(29);
  for (int k = 0; k < 30; ++k) {
    const std::size_t n = 2 + rng.below(12);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(i % 3 == 0 ? "algo " + std::to_string(i) : "h" + std::to_string(i));
    const auto d = agglomerate(random_sim(rng, n), Linkage::Average, labels);
    CHECK(dendrogram_from_json(to_json(d)) == d);
    CHECK(parse_newick(to_newick(d)) == d);

    // without the comments the structure and heights still come back
    const std::string bare = std::regex_replace(to_newick(d), std::regex(R"(\[[^\]]*\])"), "");
    const auto rebuilt = parse_newick(bare);
    // leaf numbering follows the text order, so compare by label
    const auto named = [](const Dendrogram& x) {
      std::vector<std::set<std::string>> out;
      for (const auto& s : merge_sets(x)) {
        std::set<std::string> names;
        for (auto leaf : s) names.insert(x.leaves[leaf]);
        out.push_back(names);
      }
      return out;
    };
    CHECK(named(rebuilt) == named(d));
    for (std::size_t i = 0; i < d.merges.size(); ++i) CHECK(rebuilt.merges[i].distance == doctest::Approx(d.merges[i].distance).epsilon(1e-9));
  }
  CHECK_THROWS_WITH_AS(parse_newick("((a,b);"), doctest::Contains("ParseFailure"), Error);
}

TEST_CASE("behavioral clones merge at height zero whatever their syntax") {
  const auto& reg = fixtures::builtin_registry();
  const auto fp = search::default_search_fingerprint();
  const std::vector<AlgorithmSpec> specs{
      AlgorithmSpec::dsl(parse_sexpr("(feat dist_to_current)")),
      AlgorithmSpec::dsl(parse_sexpr("(neg (feat dist_to_current))")),
      AlgorithmSpec::dsl(parse_sexpr("(mul (const 3) (log1p_safe (sqrt_safe (feat dist_to_current))))")),
  };
  std::vector<ScoredAlgorithm> algos;
  for (const auto& s : specs) algos.push_back({s, 0.0, record_fingerprint(s, fp, reg), 0});
  const auto d = agglomerate(sim_matrix(algos, fp.traj_cfg, &reg));
  CHECK(d.merges[0] == Merge{0, 2, 0.0, 3});
  CHECK(to_newick(d).find("0:0[&id=0") != std::string::npos);
}
