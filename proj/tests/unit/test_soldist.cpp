#include <cmath>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "pstraj/error.hpp"
#include "pstraj/rng.hpp"
#include "pstraj/soldist.hpp"

using namespace pstraj;

namespace {

std::vector<std::uint32_t> chars(const std::string& s) { return {s.begin(), s.end()}; }

// Every sequence over {0..alphabet-1} of length <= max_len.
std::vector<std::vector<std::uint32_t>> all_sequences(std::uint32_t alphabet, std::size_t max_len) {
  std::vector<std::vector<std::uint32_t>> out{{}};
  for (std::size_t begin = 0; begin < out.size(); ++begin) {
    if (out[begin].size() == max_len) continue;
    for (std::uint32_t s = 0; s < alphabet; ++s) {
      auto next = out[begin];
      next.push_back(s);
      out.push_back(next);
    }
  }
  return out;
}

std::vector<std::uint32_t> random_seq(Rng& rng, std::size_t max_len, std::uint32_t alphabet) {
  std::vector<std::uint32_t> v(rng.below(max_len + 1));
  for (auto& x : v) x = static_cast<std::uint32_t>(rng.below(alphabet));
  return v;
}

ProblemInstance hinted(double hint) {
  ProblemInstance p;
  p.id = "h";
  p.task = Task::Sort;
  p.data = SortData{{0, 1}};
  p.start_points = {{"0", 0u}};
  p.d_max_hint = hint;
  return p;
}

}  // namespace

TEST_CASE("edit distance examples") {
  CHECK(edit_distance(chars("abc"), chars("abc")) == 0);
  CHECK(edit_distance(chars("kitten"), chars("sitting")) == 3);
  CHECK(oracle::edit_distance(chars("kitten"), chars("sitting")) == 3);
  const std::vector<std::uint32_t> a{1, 2, 3}, b{3, 2, 1};
  CHECK(edit_distance(a, b) == 2);
  CHECK(edit_distance({}, a) == 3);
}

TEST_CASE("edit distance matches the recursive definition on every short binary pair") {
  const auto seqs = all_sequences(2, 6);
  for (const auto& x : seqs) {
    for (const auto& y : seqs) {
      REQUIRE(edit_distance(x, y) == oracle::edit_distance(x, y));
    }
  }
}

TEST_CASE("edit distance table holds every prefix distance") {
  Rng rng(4);
  for (int k = 0; k < 50; ++k) {
    const auto a = random_seq(rng, 6, 3);
    const auto b = random_seq(rng, 6, 3);
    const auto t = edit_distance_table(a, b);
    REQUIRE(t.size() == (a.size() + 1) * (b.size() + 1));
    for (std::size_t i = 0; i <= a.size(); ++i) {
      for (std::size_t j = 0; j <= b.size(); ++j) {
        CHECK(t[i * (b.size() + 1) + j] == oracle::edit_distance(a, b, i, j));
      }
    }
  }
}

TEST_CASE("edit distance is a metric on random sequences") {
  Rng rng(8);
  for (int k = 0; k < 3000; ++k) {
    const auto a = random_seq(rng, 8, 4);
    const auto b = random_seq(rng, 8, 4);
    const auto c = random_seq(rng, 8, 4);
    CHECK(edit_distance(a, c) <= edit_distance(a, b) + edit_distance(b, c));
    CHECK(edit_distance(a, b) == edit_distance(b, a));
    CHECK((edit_distance(a, b) == 0) == (a == b));
  }
}

TEST_CASE("dist_solution normalization") {
  const DistConfig maxlen;
  CHECK(dist_solution(Solution::perm({4, 2, 0}), Solution::perm({4, 2, 0}), maxlen) == 0.0);
  CHECK(dist_solution(Solution::perm({1, 2, 3}), Solution::perm({3, 2, 1}), maxlen) == doctest::Approx(2.0 / 3.0));
  CHECK(dist_solution(Solution::cat({}), Solution::cat({}), maxlen) == 0.0);

  DistConfig d10;
  d10.euclid_bound = 10.0;
  CHECK(dist_solution(Solution::real({0, 0}), Solution::real({3, 4}), d10) == doctest::Approx(0.5));
  CHECK(dist_solution(Solution::real({0, 0}), Solution::real({30, 40}), d10) == 1.0);

  const auto inst = hinted(8.0);
  CHECK(dist_solution(Solution::real({0, 0}), Solution::real({3, 4}), d10, &inst) == doctest::Approx(5.0 / 8.0));
  DistConfig hint_rule;
  hint_rule.d_max_rule = DMaxRule::InstanceHint;
  CHECK(dist_solution(Solution::perm({1, 2, 3}), Solution::perm({3, 2, 1}), hint_rule, &inst) == doctest::Approx(0.25));

  CHECK_THROWS_WITH_AS(dist_solution(Solution::perm({1}), Solution::real({1.0}), maxlen),
                       doctest::Contains("PayloadMismatch"), Error);
}

TEST_CASE("dist_solution is symmetric, bounded, and zero exactly on equal payloads") {
  Rng rng(12);
  const DistConfig cfg;
  for (int k = 0; k < 2000; ++k) {
    const auto x = Solution::cat(random_seq(rng, 6, 3));
    const auto y = Solution::cat(random_seq(rng, 6, 3));
    const double d = dist_solution(x, y, cfg);
    CHECK(d == dist_solution(y, x, cfg));
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
    CHECK((d == 0.0) == (x == y));
  }
}

TEST_CASE("stochastic discrepancy") {
  DistConfig d10;
  d10.euclid_bound = 10.0;
  const std::vector<Solution> origin{Solution::real({0, 0})};
  const std::vector<Solution> far{Solution::real({3, 4})};
  CHECK(dist_solution_stochastic(origin, far, d10) == doctest::Approx(0.5));
  const std::vector<Solution> twice{Solution::real({0, 0}), Solution::real({0, 0})};
  CHECK(dist_solution_stochastic(twice, origin, d10) == 0.0);

  Rng rng(21);
  for (int k = 0; k < 100; ++k) {
    std::vector<Solution> xs, ys;
    for (std::size_t i = 0, n = 1 + rng.below(4); i < n; ++i) xs.push_back(Solution::real({rng.uniform(-3, 3), rng.uniform(-3, 3)}));
    for (std::size_t i = 0, n = 1 + rng.below(4); i < n; ++i) ys.push_back(Solution::real({rng.uniform(-3, 3), rng.uniform(-3, 3)}));
    CHECK(dist_solution_stochastic(xs, xs, d10) == doctest::Approx(0.0).epsilon(1e-12));

    const auto mean = [&](const std::vector<Solution>& a, const std::vector<Solution>& b) {
      double s = 0;
      for (const auto& p : a) {
        for (const auto& q : b) {
          const auto& u = std::get<RealVec>(p.payload).values;
          const auto& v = std::get<RealVec>(q.payload).values;
          s += std::min(1.0, std::hypot(u[0] - v[0], u[1] - v[1]) / 10.0);
        }
      }
      return s / static_cast<double>(a.size() * b.size());
    };
    const double want = std::clamp(mean(xs, ys) - 0.5 * (mean(xs, xs) + mean(ys, ys)), 0.0, 1.0);
    CHECK(dist_solution_stochastic(xs, ys, d10) == doctest::Approx(want).epsilon(1e-12));
  }
}
