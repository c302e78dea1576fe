#include "pstraj/search/database.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pstraj/error.hpp"
#include "pstraj/parallel.hpp"
#include "pstraj/search/evaluate.hpp"

namespace pstraj::search {

std::size_t Island::size() const noexcept {
  std::size_t n = 0;
  for (const auto& c : clusters) n += c.members.size();
  return n;
}

std::vector<const ScoredAlgorithm*> Island::members() const {
  std::vector<const ScoredAlgorithm*> out;
  for (const auto& c : clusters) {
    for (const auto& m : c.members) out.push_back(&m);
  }
  return out;
}

double Island::best_fitness() const noexcept {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : clusters) {
    if (!c.members.empty()) best = std::min(best, c.fitness);
  }
  return best;
}

const ScoredAlgorithm& Island::best() const {
  const double f = best_fitness();
  for (const auto& c : clusters) {
    if (!c.members.empty() && c.fitness == f) return c.members.front();
  }
  throw Error(Errc::EmptyIsland, "island has no members");
}

double fitness_key(double fitness) { return std::round(fitness * 1e9) / 1e9; }

void insert_member(Island& island, ScoredAlgorithm cand) {
  const double key = fitness_key(cand.fitness);
  for (auto& c : island.clusters) {
    if (c.fitness == key) {
      c.members.push_back(std::move(cand));
      return;
    }
  }
  island.clusters.push_back({key, {std::move(cand)}});
}

namespace {

std::size_t best_index(std::span<const ScoredAlgorithm> algos) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < algos.size(); ++i) {
    if (algos[i].fitness < algos[best].fitness) best = i;
  }
  return best;
}

}  // namespace

IslandDatabase build_database(std::vector<ScoredAlgorithm> initial, const SearchConfig& cfg,
                              const InstanceRegistry* reg, std::size_t workers) {
  if (initial.empty()) throw Error(Errc::EmptyPopulation, "no initial candidates");
  IslandDatabase db;
  db.config = cfg;
  db.islands.resize(cfg.n_isl);
  const std::size_t n = initial.size();
  const ScoredAlgorithm best = initial[best_index(initial)];

  std::vector<std::vector<std::size_t>> groups;
  if (n == 1) {
    groups = {{0}};
  } else {
    const Matrix sim = sim_matrix(initial, cfg.fingerprint.traj_cfg, reg, workers);
    const Dendrogram d = agglomerate(sim, cfg.linkage);
    // Zero-height merges join behavioral clones; cutting through them would
    // spread identical behavior over several islands.
    std::size_t clone_merges = 0;
    for (const auto& m : d.merges) clone_merges += m.distance == 0.0 ? 1 : 0;
    groups = cut_k(d, std::min(cfg.n_isl, n - clone_merges));
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t i : groups[g]) insert_member(db.islands[g], initial[i]);
  }
  for (std::size_t g = groups.size(); g < cfg.n_isl; ++g) insert_member(db.islands[g], best);
  return db;
}

IslandDatabase init_database(const SearchConfig& cfg, const InstanceRegistry& reg, Rng& rng, std::size_t workers) {
  validate_search_config(cfg);
  std::vector<AlgorithmSpec> specs;
  specs.reserve(cfg.n_init);
  for (std::size_t i = 0; i < cfg.n_init; ++i) specs.push_back(AlgorithmSpec::dsl(random_expr(rng, cfg.init_depth)));
  std::vector<ScoredAlgorithm> scored(specs.size());
  parallel_for(specs.size(), workers, [&](std::size_t i) {
    try {
      scored[i] = evaluate_candidate(specs[i], cfg.fingerprint, reg, cfg.timeout_s);
    } catch (const Error& e) {
      throw Error(Errc::EvaluationFailure, "initial candidate " + std::to_string(i) + ": " + e.what());
    }
  });
  return build_database(std::move(scored), cfg, &reg, workers);
}

const ScoredAlgorithm& pick_member(const Island& island, const SearchConfig& cfg, Rng& rng,
                                   const ScoredAlgorithm* exclude) {
  std::vector<const FitnessCluster*> eligible;
  for (const auto& c : island.clusters) {
    const bool usable = std::any_of(c.members.begin(), c.members.end(), [&](const auto& m) { return &m != exclude; });
    if (usable) eligible.push_back(&c);
  }
  if (eligible.empty()) throw Error(Errc::InsufficientMembers, "island has no member left to pick");
  std::stable_sort(eligible.begin(), eligible.end(), [](auto* a, auto* b) { return a->fitness < b->fitness; });

  // Best rank scores 1 and the worst 0; weights are shifted so the best is exp(0).
  const std::size_t k = eligible.size();
  std::vector<double> w(k);
  for (std::size_t r = 0; r < k; ++r) {
    const double score = k == 1 ? 1.0 : 1.0 - static_cast<double>(r) / static_cast<double>(k - 1);
    w[r] = std::exp((score - 1.0) / cfg.cluster_temp);
  }
  const FitnessCluster& c = *eligible[rng.weighted(w)];

  std::vector<const ScoredAlgorithm*> cands;
  for (const auto& m : c.members) {
    if (&m != exclude) cands.push_back(&m);
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (auto* m : cands) {
    lo = std::min(lo, static_cast<double>(m->spec.length_tokens));
    hi = std::max(hi, static_cast<double>(m->spec.length_tokens));
  }
  std::vector<double> mw(cands.size());
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const double norm = (static_cast<double>(cands[i]->spec.length_tokens) - lo) / (hi + 1e-6);
    mw[i] = std::exp(-norm / cfg.length_temp);
  }
  return *cands[rng.weighted(mw)];
}

ParentDraw select_parents(const IslandDatabase& db, Rng& rng) {
  std::vector<std::size_t> populated;
  std::vector<std::size_t> rich;
  for (std::size_t i = 0; i < db.islands.size(); ++i) {
    const std::size_t n = db.islands[i].size();
    if (n >= 1) populated.push_back(i);
    if (n >= 2) rich.push_back(i);
  }
  if (populated.empty()) throw Error(Errc::EmptyIsland, "every island is empty");
  ParentDraw out;
  if (rng.bernoulli(db.config.p_s1)) {
    if (populated.size() >= 2) {
      const std::size_t a = rng.below(populated.size());
      const std::size_t b = (a + 1 + rng.below(populated.size() - 1)) % populated.size();
      out.inter_island = true;
      out.first_island = populated[a];
      out.second_island = populated[b];
      out.first = &pick_member(db.islands[out.first_island], db.config, rng);
      out.second = &pick_member(db.islands[out.second_island], db.config, rng);
      return out;
    }
    out.fell_back = true;
  }
  if (rich.empty()) throw Error(Errc::InsufficientMembers, "no island holds two distinct members");
  const std::size_t isl = rich[rng.below(rich.size())];
  out.first_island = isl;
  out.second_island = isl;
  out.first = &pick_member(db.islands[isl], db.config, rng);
  out.second = &pick_member(db.islands[isl], db.config, rng, out.first);
  return out;
}

std::vector<std::optional<double>> island_similarities(const IslandDatabase& db, std::span<const PSTraj> trajs,
                                                       const InstanceRegistry* reg) {
  std::vector<std::optional<double>> out(db.islands.size());
  for (std::size_t i = 0; i < db.islands.size(); ++i) {
    const auto members = db.islands[i].members();
    if (members.empty()) continue;
    double s = 0.0;
    for (const auto* m : members) s += behave_sim_traj(trajs, m->trajs, db.config.fingerprint.traj_cfg, reg);
    out[i] = s / static_cast<double>(members.size());
  }
  return out;
}

namespace {

void check_conformity(const FingerprintSet& fp, std::span<const PSTraj> trajs) {
  if (trajs.size() != fp.pairs.size() * fp.seeds.size()) {
    throw Error(Errc::FingerprintMismatch, "candidate holds " + std::to_string(trajs.size()) +
                                               " trajectories, the fingerprint has " +
                                               std::to_string(fp.pairs.size() * fp.seeds.size()));
  }
  std::size_t k = 0;
  for (const auto& [inst, start] : fp.pairs) {
    for (auto seed : fp.seeds) {
      const auto& m = trajs[k++].meta;
      if (m.instance_id != inst || m.start_id != start || m.seed != seed) {
        throw Error(Errc::FingerprintMismatch, "trajectory " + std::to_string(k - 1) + " was recorded on (" +
                                                   m.instance_id + ", " + m.start_id + ") instead of (" + inst +
                                                   ", " + start + ")");
      }
    }
  }
}

}  // namespace

std::size_t register_candidate(IslandDatabase& db, ScoredAlgorithm cand, const InstanceRegistry* reg) {
  check_conformity(db.config.fingerprint, cand.trajs);
  const auto sims = island_similarities(db, cand.trajs, reg);
  std::size_t target = 0;
  std::optional<double> best;
  for (std::size_t i = 0; i < sims.size(); ++i) {
    if (sims[i] && (!best || *sims[i] > *best)) {
      best = sims[i];
      target = i;
    }
  }
  insert_member(db.islands[target], std::move(cand));
  return target;
}

void restart_islands(IslandDatabase& db, Rng& rng) {
  const std::size_t n = db.islands.size();
  if (n < 2) return;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return db.islands[a].best_fitness() > db.islands[b].best_fitness();
  });
  const std::size_t drop = n / 2;
  std::vector<std::size_t> survivors(order.begin() + static_cast<std::ptrdiff_t>(drop), order.end());
  std::sort(survivors.begin(), survivors.end());
  std::erase_if(survivors, [&](std::size_t i) { return db.islands[i].empty(); });
  if (survivors.empty()) return;
  for (std::size_t k = 0; k < drop; ++k) {
    Island fresh;
    insert_member(fresh, db.islands[survivors[rng.below(survivors.size())]].best());
    db.islands[order[k]] = std::move(fresh);
  }
}

namespace {

std::vector<std::vector<PSTraj>> prototypes(const Island& island, std::size_t cap) {
  const auto members = island.members();
  std::vector<std::vector<PSTraj>> out;
  if (members.size() <= cap) {
    for (const auto* m : members) out.push_back(m->trajs);
    return out;
  }
  for (std::size_t i = 0; i < cap; ++i) out.push_back(members[i * members.size() / cap]->trajs);
  return out;
}

}  // namespace

DiversityStats diversity(const IslandDatabase& db, const InstanceRegistry* reg) {
  const auto& cfg = db.config.fingerprint.traj_cfg;
  std::vector<std::vector<std::vector<PSTraj>>> protos;
  for (const auto& isl : db.islands) protos.push_back(prototypes(isl, db.config.prototype_cap));

  DiversityStats out;
  out.intra.resize(protos.size());
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < protos.size(); ++i) {
    if (protos[i].size() < 2) continue;
    out.intra[i] = intra_island_distance(protos[i], cfg, reg);
    sum += *out.intra[i];
    ++count;
  }
  if (count > 0) out.mean_intra = sum / static_cast<double>(count);

  sum = 0.0;
  count = 0;
  for (std::size_t a = 0; a < protos.size(); ++a) {
    for (std::size_t b = a + 1; b < protos.size(); ++b) {
      if (protos[a].empty() || protos[b].empty()) continue;
      sum += inter_island_distance(protos[a], protos[b], cfg, reg);
      ++count;
    }
  }
  if (count > 0) out.mean_inter = sum / static_cast<double>(count);
  return out;
}

}  // namespace pstraj::search
