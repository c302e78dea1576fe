#include "pstraj/behavesim.hpp"

#include <cstdio>

#include "pstraj/error.hpp"
#include "pstraj/parallel.hpp"
#include "pstraj/zoo/zoo.hpp"

namespace pstraj {

void validate_fingerprint(const FingerprintSet& fp) {
  if (fp.pairs.empty()) throw Error(Errc::EmptyFingerprint, "fingerprint has no (instance, start) pairs");
  if (fp.seeds.empty()) throw Error(Errc::EmptyFingerprint, "fingerprint has no seeds");
  validate_config(fp.traj_cfg);
}

FingerprintSet fingerprint_for_prefix(const InstanceRegistry& reg, std::string_view prefix, TrajSimConfig cfg) {
  FingerprintSet fp;
  fp.traj_cfg = std::move(cfg);
  for (const auto& id : reg.ids(prefix)) {
    for (const auto& s : reg.get(id).start_points) fp.pairs.emplace_back(id, s.id);
  }
  if (fp.pairs.empty()) throw Error(Errc::UnknownInstance, "no instance id starts with '" + std::string(prefix) + "'");
  return fp;
}

FingerprintSet fingerprint_for_task(const InstanceRegistry& reg, Task task, TrajSimConfig cfg) {
  return fingerprint_for_prefix(reg, fixtures::default_prefix(task), std::move(cfg));
}

std::vector<PSTraj> record_fingerprint(const AlgorithmSpec& a, const FingerprintSet& fp, const InstanceRegistry& reg) {
  validate_fingerprint(fp);
  std::vector<PSTraj> out;
  out.reserve(fp.pairs.size() * fp.seeds.size());
  for (const auto& [inst_id, start_id] : fp.pairs) {
    for (auto seed : fp.seeds) {
      try {
        out.push_back(zoo::run_algorithm(a, reg.get(inst_id), start_id, seed));
      } catch (const Error& e) {
        throw Error(e.code(), std::string(e.what()) + " [instance " + inst_id + ", start " + start_id + "]");
      }
    }
  }
  return out;
}

namespace {

const ProblemInstance* lookup(const InstanceRegistry* reg, const PSTraj& t) {
  if (reg == nullptr || !reg->contains(t.meta.instance_id)) return nullptr;
  return &reg->get(t.meta.instance_id);
}

std::vector<double> aligned_sims(std::span<const PSTraj> a, std::span<const PSTraj> b, const TrajSimConfig& cfg,
                                 const InstanceRegistry* reg) {
  if (a.empty() && b.empty()) throw Error(Errc::EmptyFingerprint, "no trajectories to compare");
  if (a.size() != b.size()) {
    throw Error(Errc::LengthMismatch,
                "fingerprints hold " + std::to_string(a.size()) + " and " + std::to_string(b.size()) + " trajectories");
  }
  std::vector<double> sims(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) sims[i] = trajectory_similarity(a[i], b[i], cfg, lookup(reg, a[i]));
  return sims;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

std::vector<double> behave_sim_breakdown(const AlgorithmSpec& a, const AlgorithmSpec& b, const FingerprintSet& fp,
                                         const InstanceRegistry& reg) {
  const auto ta = record_fingerprint(a, fp, reg);
  const auto tb = record_fingerprint(b, fp, reg);
  return aligned_sims(ta, tb, fp.traj_cfg, &reg);
}

double behave_sim(const AlgorithmSpec& a, const AlgorithmSpec& b, const FingerprintSet& fp, const InstanceRegistry& reg) {
  return mean(behave_sim_breakdown(a, b, fp, reg));
}

double behave_sim_traj(std::span<const PSTraj> a, std::span<const PSTraj> b, const TrajSimConfig& cfg,
                       const InstanceRegistry* reg) {
  return mean(aligned_sims(a, b, cfg, reg));
}

Matrix sim_matrix(std::span<const ScoredAlgorithm> algos, const TrajSimConfig& cfg, const InstanceRegistry* reg,
                  std::size_t workers) {
  const std::size_t n = algos.size();
  Matrix m(n, n);
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) cells.emplace_back(i, j);
  }
  parallel_for(cells.size(), workers, [&](std::size_t k) {
    const auto [i, j] = cells[k];
    const double s = behave_sim_traj(algos[i].trajs, algos[j].trajs, cfg, reg);
    m(i, j) = s;
    m(j, i) = s;
  });
  return m;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string matrix_csv(const Matrix& m, std::span<const std::string> labels) {
  std::string out = "id";
  for (const auto& l : labels) out += "," + csv_field(l);
  out += "\n";
  char buf[32];
  for (std::size_t i = 0; i < m.rows; ++i) {
    out += i < labels.size() ? csv_field(labels[i]) : std::to_string(i);
    for (std::size_t j = 0; j < m.cols; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      out += ",";
      out += buf;
    }
    out += "\n";
  }
  return out;
}

Json to_json(const FingerprintSet& fp) {
  Json pairs = Json::array();
  for (const auto& [inst, start] : fp.pairs) pairs.push_back({{"instance_id", inst}, {"start_id", start}});
  return {{"pairs", std::move(pairs)}, {"seeds", fp.seeds}, {"traj_cfg", to_json(fp.traj_cfg)}};
}

FingerprintSet fingerprint_from_json(const Json& j) {
  FingerprintSet fp;
  if (!j.is_object() || !j.contains("pairs") || !j["pairs"].is_array()) {
    throw Error(Errc::BadConfig, "fingerprint.pairs must be an array");
  }
  for (const auto& p : j["pairs"]) {
    if (!p.is_object() || !p.contains("instance_id") || !p.contains("start_id") || !p["instance_id"].is_string() ||
        !p["start_id"].is_string()) {
      throw Error(Errc::BadConfig, "fingerprint.pairs entries need string instance_id and start_id");
    }
    fp.pairs.emplace_back(p["instance_id"].get<std::string>(), p["start_id"].get<std::string>());
  }
  if (j.contains("seeds")) {
    try {
      fp.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
    } catch (const nlohmann::json::exception&) {
      throw Error(Errc::BadConfig, "fingerprint.seeds must be unsigned integers");
    }
  }
  if (j.contains("traj_cfg")) fp.traj_cfg = traj_config_from_json(j["traj_cfg"]);
  validate_fingerprint(fp);
  return fp;
}

}  // namespace pstraj
