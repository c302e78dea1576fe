#include "pstraj/search/run.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <set>

#include "pstraj/error.hpp"
#include "pstraj/parallel.hpp"
#include "pstraj/search/database.hpp"
#include "pstraj/search/eoh.hpp"
#include "pstraj/search/evaluate.hpp"

namespace pstraj::search {

namespace {

// A generator that keeps returning nothing (every reply unparseable) would
// otherwise spin forever without spending budget.
constexpr std::size_t kMaxEmptyRounds = 100;

bool discardable(Errc c) {
  return c == Errc::Timeout || c == Errc::EvaluationFailure || c == Errc::MissingFeature ||
         c == Errc::InvalidSolution;
}

std::vector<std::optional<ScoredAlgorithm>> evaluate_batch(const std::vector<AlgorithmSpec>& specs,
                                                           const SearchConfig& cfg, const InstanceRegistry& reg,
                                                           std::size_t workers) {
  std::vector<std::optional<ScoredAlgorithm>> out(specs.size());
  parallel_for(specs.size(), workers, [&](std::size_t i) {
    try {
      out[i] = evaluate_candidate(specs[i], cfg.fingerprint, reg, cfg.timeout_s);
    } catch (const Error& e) {
      if (!discardable(e.code())) throw;
    }
  });
  return out;
}

std::vector<ScoredAlgorithm> evaluate_initial(const SearchConfig& cfg, const InstanceRegistry& reg, Rng& rng,
                                              std::size_t n, std::size_t workers) {
  std::vector<AlgorithmSpec> specs;
  for (std::size_t i = 0; i < n; ++i) specs.push_back(AlgorithmSpec::dsl(random_expr(rng, cfg.init_depth)));
  std::vector<ScoredAlgorithm> out(n);
  parallel_for(n, workers, [&](std::size_t i) {
    try {
      out[i] = evaluate_candidate(specs[i], cfg.fingerprint, reg, cfg.timeout_s);
    } catch (const Error& e) {
      throw Error(Errc::EvaluationFailure, "initial candidate " + std::to_string(i) + ": " + e.what());
    }
  });
  return out;
}

class Tracker {
 public:
  explicit Tracker(SearchReport& r) : r_(r) {}
  void seen(const ScoredAlgorithm& a) {
    if (a.fitness < best_) {
      best_ = a.fitness;
      r_.best_text = a.spec.display_text;
    }
  }
  void close_init() { r_.init_best = best_; }
  void step() { r_.best_curve.push_back(best_); }

 private:
  SearchReport& r_;
  double best_ = std::numeric_limits<double>::infinity();
};

Json member_json(const ScoredAlgorithm& a) {
  return {{"spec", to_json(a.spec)}, {"fitness", a.fitness}, {"eval_count_at_birth", a.eval_count_at_birth}};
}

void finish_tops(SearchReport& r, const std::vector<const ScoredAlgorithm*>& all) {
  std::vector<const ScoredAlgorithm*> sorted = all;
  std::stable_sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) {
    if (a->fitness != b->fitness) return a->fitness < b->fitness;
    return a->spec.display_text < b->spec.display_text;
  });
  std::set<std::string> seen;
  double sum = 0.0;
  std::size_t k = 0;
  for (const auto* a : sorted) {
    if (k == 10) break;
    if (!seen.insert(a->spec.display_text).second) continue;
    if (k == 0) r.top1 = a->fitness;
    sum += a->fitness;
    ++k;
  }
  r.top10 = k > 0 ? sum / static_cast<double>(k) : 0.0;
}

SearchReport start_report(const SearchConfig& cfg, SearchMode mode) {
  SearchReport r;
  r.mode = mode;
  r.registration = cfg.registration;
  r.seed = cfg.seed;
  r.fingerprint = cfg.fingerprint;
  r.config = to_json(cfg);
  r.config["mode"] = mode_name(mode);
  return r;
}

std::vector<AlgorithmSpec> next_batch(CandidateGenerator& gen, std::span<const ScoredAlgorithm> parents,
                                      const SearchConfig& cfg, std::size_t remaining, std::size_t& empty_rounds) {
  auto specs = gen.generate(parents, cfg.offspring_per_prompt);
  if (specs.size() > remaining) specs.resize(remaining);
  empty_rounds = specs.empty() ? empty_rounds + 1 : 0;
  if (empty_rounds >= kMaxEmptyRounds) {
    throw Error(Errc::GeneratorUnavailable, "generator produced no usable candidate in " +
                                                std::to_string(kMaxEmptyRounds) + " consecutive rounds");
  }
  return specs;
}

void add_checkpoint(SearchReport& r, const IslandDatabase& db, const InstanceRegistry& reg) {
  const auto d = diversity(db, &reg);
  r.checkpoints.push_back({r.evaluations, d.intra, d.mean_intra, d.mean_inter});
}

SearchReport run_funsearch(const SearchConfig& cfg, CandidateGenerator& gen, const InstanceRegistry& reg,
                           std::size_t workers) {
  SearchReport r = start_report(cfg, SearchMode::Funsearch);
  Tracker track(r);
  Rng rng(cfg.seed);
  IslandDatabase db = init_database(cfg, reg, rng, workers);
  r.init_evaluations = cfg.n_init;
  for (const auto& isl : db.islands) {
    for (const auto* m : isl.members()) track.seen(*m);
  }
  track.close_init();
  if (cfg.checkpoint_period > 0) add_checkpoint(r, db, reg);

  std::size_t empty_rounds = 0;
  while (r.evaluations < cfg.eval_budget) {
    const ParentDraw draw = select_parents(db, rng);
    if (draw.fell_back) ++r.s1_fallbacks;
    const std::vector<ScoredAlgorithm> parents{*draw.first, *draw.second};
    const std::size_t home = parents[0].fitness <= parents[1].fitness ? draw.first_island : draw.second_island;

    const auto specs = next_batch(gen, parents, cfg, cfg.eval_budget - r.evaluations, empty_rounds);
    auto results = evaluate_batch(specs, cfg, reg, workers);
    for (auto& res : results) {
      ++r.evaluations;
      ++db.eval_counter;
      if (res) {
        res->eval_count_at_birth = db.eval_counter;
        track.seen(*res);
        if (cfg.registration == Registration::BehaveSim) {
          register_candidate(db, std::move(*res), &reg);
        } else {
          insert_member(db.islands[home], std::move(*res));
        }
      } else {
        ++r.failures;
      }
      track.step();
      if (cfg.restart_period_evals > 0 && db.eval_counter % cfg.restart_period_evals == 0) {
        restart_islands(db, rng);
        ++r.restarts;
      }
      if (cfg.checkpoint_period > 0 && r.evaluations % cfg.checkpoint_period == 0) add_checkpoint(r, db, reg);
    }
  }
  if (cfg.checkpoint_period > 0 && r.checkpoints.back().evals != r.evaluations) add_checkpoint(r, db, reg);
  r.parse_failures = gen.parse_failures();

  std::vector<const ScoredAlgorithm*> all;
  Json islands = Json::array();
  for (const auto& isl : db.islands) {
    Json clusters = Json::array();
    for (const auto& c : isl.clusters) {
      Json members = Json::array();
      for (const auto& m : c.members) {
        members.push_back(member_json(m));
        all.push_back(&m);
      }
      clusters.push_back({{"fitness", c.fitness}, {"members", std::move(members)}});
    }
    islands.push_back({{"clusters", std::move(clusters)}});
  }
  r.snapshot = {{"islands", std::move(islands)}};
  finish_tops(r, all);
  return r;
}

SearchReport run_eoh(const SearchConfig& cfg, CandidateGenerator& gen, const InstanceRegistry& reg,
                     std::size_t workers) {
  SearchReport r = start_report(cfg, SearchMode::Eoh);
  Tracker track(r);
  Rng rng(cfg.seed);
  auto pop = evaluate_initial(cfg, reg, rng, cfg.population_size, workers);
  r.init_evaluations = pop.size();
  for (const auto& a : pop) track.seen(a);
  track.close_init();

  const auto best_of = [](const std::vector<ScoredAlgorithm>& p) {
    std::size_t b = 0;
    for (std::size_t i = 1; i < p.size(); ++i) {
      if (p[i].fitness < p[b].fitness) b = i;
    }
    return p[b];
  };
  ScoredAlgorithm incumbent = best_of(pop);
  const auto& tcfg = cfg.fingerprint.traj_cfg;

  std::size_t empty_rounds = 0;
  while (r.evaluations < cfg.eval_budget) {
    const auto parents = eoh_parent_select(pop, incumbent.trajs, cfg.parent_count, tcfg, rng, &reg, workers);
    const auto specs = next_batch(gen, parents, cfg, cfg.eval_budget - r.evaluations, empty_rounds);
    auto results = evaluate_batch(specs, cfg, reg, workers);
    for (auto& res : results) {
      ++r.evaluations;
      if (res) {
        res->eval_count_at_birth = r.evaluations;
        track.seen(*res);
        if (res->fitness < incumbent.fitness) incumbent = *res;
        pop.push_back(std::move(*res));
      } else {
        ++r.failures;
      }
      track.step();
    }
    if (pop.size() > cfg.population_size) {
      pop = eoh_manage_population(pop, incumbent.trajs, cfg.population_size, tcfg, &reg, workers);
    }
  }
  r.parse_failures = gen.parse_failures();

  Json members = Json::array();
  std::vector<const ScoredAlgorithm*> all;
  for (const auto& m : pop) {
    members.push_back(member_json(m));
    all.push_back(&m);
  }
  r.snapshot = {{"population", std::move(members)}};
  finish_tops(r, all);
  return r;
}

}  // namespace

SearchReport run_search(const SearchConfig& cfg, SearchMode mode, CandidateGenerator& gen, const InstanceRegistry& reg,
                        std::size_t workers) {
  validate_search_config(cfg);
  return mode == SearchMode::Funsearch ? run_funsearch(cfg, gen, reg, workers) : run_eoh(cfg, gen, reg, workers);
}

SearchReport run_search(const SearchConfig& cfg, SearchMode mode, const InstanceRegistry& reg, std::size_t workers) {
  validate_search_config(cfg);
  auto gen = make_generator(cfg);
  return run_search(cfg, mode, *gen, reg, workers);
}

SearchReport run_search(const SearchConfig& cfg, const InstanceRegistry& reg, std::size_t workers) {
  return run_search(cfg, cfg.mode, reg, workers);
}

namespace {

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Json to_json(const SearchReport& r) {
  Json cps = Json::array();
  for (const auto& c : r.checkpoints) {
    Json intra = Json::array();
    for (const auto& v : c.intra) intra.push_back(optional_json(v));
    cps.push_back({{"evals", c.evals},
                   {"intra", std::move(intra)},
                   {"mean_intra", optional_json(c.mean_intra)},
                   {"mean_inter", optional_json(c.mean_inter)}});
  }
  return {{"mode", mode_name(r.mode)},
          {"registration", registration_name(r.registration)},
          {"seed", r.seed},
          {"init_evaluations", r.init_evaluations},
          {"evaluations", r.evaluations},
          {"failures", r.failures},
          {"parse_failures", r.parse_failures},
          {"restarts", r.restarts},
          {"s1_fallbacks", r.s1_fallbacks},
          {"init_best", r.init_best},
          {"top1", r.top1},
          {"top10", r.top10},
          {"best_text", r.best_text},
          {"best_curve", r.best_curve},
          {"checkpoints", std::move(cps)},
          {"config", r.config},
          {"snapshot", r.snapshot}};
}

std::string curve_csv(const SearchReport& r) {
  std::string out = "eval,best\n";
  for (std::size_t i = 0; i < r.best_curve.size(); ++i) out += std::to_string(i + 1) + "," + num(r.best_curve[i]) + "\n";
  return out;
}

std::string checkpoint_csv(const SearchReport& r) {
  std::string out = "evals,metric,island,value\n";
  for (const auto& c : r.checkpoints) {
    const std::string e = std::to_string(c.evals);
    for (std::size_t i = 0; i < c.intra.size(); ++i) {
      if (c.intra[i]) out += e + ",intra," + std::to_string(i) + "," + num(*c.intra[i]) + "\n";
    }
    if (c.mean_intra) out += e + ",mean_intra,," + num(*c.mean_intra) + "\n";
    if (c.mean_inter) out += e + ",mean_inter,," + num(*c.mean_inter) + "\n";
  }
  return out;
}

std::vector<ScoredAlgorithm> snapshot_members(const Json& snapshot) {
  const auto read = [](const Json& m) {
    ScoredAlgorithm a;
    if (!m.is_object() || !m.contains("spec") || !m.contains("fitness")) {
      throw Error(Errc::ParseFailure, "snapshot member needs 'spec' and 'fitness'");
    }
    a.spec = spec_from_json(m["spec"]);
    a.fitness = m["fitness"].get<double>();
    if (m.contains("eval_count_at_birth")) a.eval_count_at_birth = m["eval_count_at_birth"].get<std::uint64_t>();
    return a;
  };
  std::vector<ScoredAlgorithm> out;
  try {
    if (snapshot.is_object() && snapshot.contains("islands")) {
    for (const auto& isl : snapshot["islands"]) {
      for (const auto& c : isl.at("clusters")) {
        for (const auto& m : c.at("members")) out.push_back(read(m));
      }
    }
  } else if (snapshot.is_object() && snapshot.contains("population")) {
    for (const auto& m : snapshot["population"]) out.push_back(read(m));
  } else {
      throw Error(Errc::ParseFailure, "snapshot needs 'islands' or 'population'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseFailure, std::string("malformed snapshot: ") + e.what());
  }
  return out;
}

}  // namespace pstraj::search
