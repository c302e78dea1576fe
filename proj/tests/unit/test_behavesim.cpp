#include "doctest.h"
#include "pstraj/behavesim.hpp"
#include "pstraj/error.hpp"
#include "pstraj/search/config.hpp"
#include "pstraj/search/evaluate.hpp"
#include "pstraj/zoo/zoo.hpp"

using namespace pstraj;

namespace {

const InstanceRegistry& reg() { return fixtures::builtin_registry(); }

FingerprintSet fp_for(std::string_view algo) { return fingerprint_for_task(reg(), zoo::find(algo)->task); }

PSTraj line(std::vector<double> xs) {
  PSTraj t;
  for (double x : xs) t.steps.push_back(Solution::real({x}));
  return t;
}

ScoredAlgorithm scored(const AlgorithmSpec& spec, const FingerprintSet& fp) {
  ScoredAlgorithm s;
  s.spec = spec;
  s.trajs = record_fingerprint(spec, fp, reg());
  return s;
}

}  // namespace

TEST_CASE("an algorithm is fully similar to itself") {
  for (const auto& algo : zoo::algorithms()) {
    CHECK_MESSAGE(behave_sim(zoo::spec(algo.id), zoo::spec(algo.id), fp_for(algo.id), reg()) == 1.0, algo.id);
  }
}

TEST_CASE("iterative and recursive dfs are behaviorally identical") {
  CHECK(behave_sim(zoo::spec("dfs_iterative"), zoo::spec("dfs_recursive"), fp_for("dfs_iterative"), reg()) == 1.0);
}

TEST_CASE("nearest and farthest neighbor diverge") {
  const auto fp = fingerprint_for_task(reg(), Task::Tsp);
  REQUIRE(fp.pairs.size() == 5);
  const double s = behave_sim(zoo::spec("tsp_nearest_neighbor"), zoo::spec("tsp_farthest_neighbor"), fp, reg());
  CHECK(s < 1.0);
  // regression pin for the shipped 20-city fixtures
  CHECK(s == doctest::Approx(0.24709267065923401).epsilon(1e-12));
}

TEST_CASE("behave_sim is symmetric and its breakdown averages to it") {
  for (const auto& p : zoo::dataset_pairs()) {
    const auto fp = fp_for(p.left);
    const double ab = behave_sim(zoo::spec(p.left), zoo::spec(p.right), fp, reg());
    CHECK(ab == behave_sim(zoo::spec(p.right), zoo::spec(p.left), fp, reg()));
    const auto parts = behave_sim_breakdown(zoo::spec(p.left), zoo::spec(p.right), fp, reg());
    REQUIRE(parts.size() == fp.pairs.size() * fp.seeds.size());
    double sum = 0;
    for (double v : parts) sum += v;
    CHECK(ab == doctest::Approx(sum / static_cast<double>(parts.size())).epsilon(1e-14));
    if (p.type_tag == zoo::PairType::T3) CHECK(ab == 1.0);
    if (p.type_tag == zoo::PairType::T1) CHECK(ab < 1.0);
  }
}

TEST_CASE("duplicating a fingerprint entry leaves the mean unchanged") {
  auto fp = fp_for("bubble_sort");
  const double base = behave_sim(zoo::spec("bubble_sort"), zoo::spec("heap_sort"), fp, reg());
  auto doubled = fp;
  doubled.pairs.insert(doubled.pairs.end(), fp.pairs.begin(), fp.pairs.end());
  CHECK(std::abs(behave_sim(zoo::spec("bubble_sort"), zoo::spec("heap_sort"), doubled, reg()) - base) <= 1e-12);
}

TEST_CASE("several seeds average per-seed similarities") {
  auto fp = fp_for("quick_sort");
  const double one = behave_sim(zoo::spec("quick_sort"), zoo::spec("merge_sort"), fp, reg());
  fp.seeds = {0, 1, 2};
  // deterministic runners ignore the seed, so the mean cannot move
  CHECK(behave_sim(zoo::spec("quick_sort"), zoo::spec("merge_sort"), fp, reg()) == doctest::Approx(one).epsilon(1e-14));
  CHECK(record_fingerprint(zoo::spec("quick_sort"), fp, reg()).size() == fp.pairs.size() * 3);
}

TEST_CASE("behave_sim_traj") {
  const std::vector<PSTraj> a{line({0}), line({0.2, 0.3})};
  const std::vector<PSTraj> b{line({0, 0.6}), line({0.2, 0.3})};
  const TrajSimConfig cfg;
  CHECK(behave_sim_traj(a, a, cfg) == 1.0);
  CHECK(behave_sim_traj(a, b, cfg) == doctest::Approx(0.7));
  CHECK_THROWS_WITH_AS(behave_sim_traj({}, {}, cfg), doctest::Contains("EmptyFingerprint"), Error);
  CHECK_THROWS_WITH_AS(behave_sim_traj(a, std::span(b).first(1), cfg), doctest::Contains("LengthMismatch"), Error);
}

TEST_CASE("sim_matrix") {
  const auto fp = search::default_search_fingerprint();
  SUBCASE("trivial shapes") {
    const std::vector<ScoredAlgorithm> one{scored(zoo::spec("tsp_nearest_neighbor"), fp)};
    CHECK(sim_matrix(one, fp.traj_cfg, &reg()) == Matrix(1, 1, 1.0));
    const std::vector<ScoredAlgorithm> clones{one[0], scored(AlgorithmSpec::dsl(Expr::feature(FeatureId::DistToCurrent)), fp)};
    CHECK(sim_matrix(clones, fp.traj_cfg, &reg()) == Matrix(2, 2, 1.0));
  }
  SUBCASE("random heuristics give an exactly symmetric matrix") {
    Rng rng(5);
    std::vector<ScoredAlgorithm> algos;
    for (int i = 0; i < 5; ++i) algos.push_back(scored(AlgorithmSpec::dsl(search::random_expr(rng, 4)), fp));
    const auto m = sim_matrix(algos, fp.traj_cfg, &reg());
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(m(i, i) == 1.0);
      for (std::size_t j = 0; j < 5; ++j) {
        CHECK(m(i, j) == m(j, i));
        if (i != j) {
          // both argument orders of the pairwise call agree bit for bit
          CHECK(m(i, j) == behave_sim_traj(algos[i].trajs, algos[j].trajs, fp.traj_cfg, &reg()));
          CHECK(m(i, j) == behave_sim_traj(algos[j].trajs, algos[i].trajs, fp.traj_cfg, &reg()));
        }
      }
    }
    CHECK(sim_matrix(algos, fp.traj_cfg, &reg(), 4) == m);
  }
}

TEST_CASE("runner failures name the fingerprint entry") {
  FingerprintSet fp;
  fp.pairs = {{"sort_0", "0"}, {"tree_1", "0"}};
  CHECK_THROWS_WITH_AS(record_fingerprint(zoo::spec("bubble_sort"), fp, reg()), doctest::Contains("tree_1"), Error);
  CHECK_THROWS_WITH_AS(validate_fingerprint(FingerprintSet{}), doctest::Contains("EmptyFingerprint"), Error);
}

TEST_CASE("fingerprint JSON") {
  auto fp = fp_for("dijkstra");
  fp.seeds = {4, 5};
  fp.traj_cfg.truncate_k = 0.1;
  const auto back = fingerprint_from_json(to_json(fp));
  CHECK(back.pairs == fp.pairs);
  CHECK(back.seeds == fp.seeds);
  CHECK(back.traj_cfg.truncate_k == 0.1);

  auto j = to_json(fp);
  j.erase("seeds");
  CHECK(fingerprint_from_json(j).seeds == std::vector<std::uint64_t>{0});
}

TEST_CASE("matrix csv keeps input order") {
  Matrix m(2, 2, 1.0);
  m(0, 1) = m(1, 0) = 0.25;
  const std::vector<std::string> labels{"b", "a"};
  CHECK(matrix_csv(m, labels) == "id,b,a\nb,1,0.25\na,0.25,1\n");
}
