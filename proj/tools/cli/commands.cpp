#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

#include "CLI11.hpp"
#include "pstraj/baselines.hpp"
#include "pstraj/behavesim.hpp"
#include "pstraj/cluster.hpp"
#include "pstraj/error.hpp"
#include "pstraj/parallel.hpp"
#include "pstraj/search/run.hpp"
#include "pstraj/zoo/zoo.hpp"

#ifndef PSTRAJ_VERSION
#define PSTRAJ_VERSION "0.0.0"
#endif

namespace pstraj::cli {

namespace fs = std::filesystem;

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::GeneratorUnavailable ? kExitService : kExitUser;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed JSON: " << e.what() << "\n";
    return kExitUser;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUser;
  }
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::Io, "cannot write '" + path.string() + "'");
  f << text;
  if (!f) throw Error(Errc::Io, "short write to '" + path.string() + "'");
}

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// The only file that carries a timestamp; written before any computation.
void write_manifest(const fs::path& dir, const std::string& command, const std::string& config_path,
                    std::uint64_t seed) {
  const Json m = {{"command", command},     {"config_path", config_path},
                  {"seed", seed},           {"output_dir", dir.string()},
                  {"tool_version", PSTRAJ_VERSION}, {"created_at", utc_now()}};
  write_file(dir / "manifest.json", m.dump(2) + "\n");
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

AlgorithmSpec resolve(const std::string& text) {
  if (!text.empty() && text.front() == '(') return AlgorithmSpec::dsl(parse_sexpr(text));
  return zoo::spec(text);
}

Task task_of(const AlgorithmSpec& a) {
  if (a.is_dsl()) return Task::Tsp;
  return zoo::find(std::get<ZooRef>(a.kind).name)->task;
}

TrajMeasure measure_from(const std::string& name) {
  const auto m = parse_measure(name);
  if (!m) throw Error(Errc::BadConfig, "--measure must be dtw, mean, erp or cosine, got '" + name + "'");
  return *m;
}

FingerprintSet fingerprint_from_file(const std::string& path) {
  try {
    return fingerprint_from_json(read_json_file(path));
  } catch (const Error& e) {
    if (e.code() == Errc::Io) throw;
    throw Error(Errc::BadConfig, path + ": " + e.what());
  }
}

}  // namespace

// ---------------------------------------------------------------------------

int cmd_dataset_eval(const DatasetEvalOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    for (const auto& m : o.measures) {
      if (m != "behavesim" && m != "ngram" && m != "tree") {
        throw Error(Errc::BadConfig, "--measures accepts behavesim, ngram and tree, got '" + m + "'");
      }
    }
    TrajSimConfig tcfg;
    if (o.config) tcfg = traj_config_from_json(read_json_file(*o.config));
    tcfg.measure = measure_from(o.traj_measure);
    const fs::path dir(o.out);
    write_manifest(dir, "dataset-eval", o.config.value_or(""), 0);

    const auto& reg = fixtures::builtin_registry();
    const auto& pairs = zoo::dataset_pairs();
    using Row = std::map<std::string, std::optional<double>>;
    std::vector<Row> rows(pairs.size());
    std::vector<std::string> failures(pairs.size());
    parallel_for(pairs.size(), o.workers, [&](std::size_t i) {
      try {
        const auto a = zoo::spec(pairs[i].left);
        const auto b = zoo::spec(pairs[i].right);
        for (const auto& m : o.measures) {
          if (m == "behavesim") {
            rows[i][m] = behave_sim(a, b, fingerprint_for_task(reg, task_of(a), tcfg), reg);
          } else if (m == "ngram") {
            rows[i][m] = ngram_sim(a, b);
          } else {
            rows[i][m] = a.is_dsl() && b.is_dsl() ? std::optional(tree_edit_sim(a, b)) : std::nullopt;
          }
        }
      } catch (const Error& e) {
        failures[i] = e.what();
      }
    });

    std::string csv = "type,case,measure,value\n";
    std::map<std::pair<std::string, std::string>, std::pair<double, std::size_t>> sums;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (!failures[i].empty()) {
        csv += "# incomplete: pair " + std::to_string(i) + " failed: " + failures[i] + "\n";
        write_file(dir / "pairs.csv", csv);
        err << "error: " << failures[i] << " (pair " << pairs[i].left << " vs " << pairs[i].right << ")\n";
        return kExitUser;
      }
      const std::string type(zoo::pair_type_name(pairs[i].type_tag));
      for (const auto& m : o.measures) {
        const auto& v = rows[i][m];
        csv += type + "," + csv_field(pairs[i].case_label) + "," + m + "," + (v ? num(*v) : "na") + "\n";
        if (v) {
          auto& s = sums[{type, m}];
          s.first += *v;
          s.second += 1;
        }
      }
    }
    write_file(dir / "pairs.csv", csv);

    std::string means = "type,measure,mean\n";
    for (const char* type : {"T1", "T2", "T3", "T4"}) {
      for (const auto& m : o.measures) {
        const auto it = sums.find({type, m});
        means += std::string(type) + "," + m + "," +
                 (it == sums.end() ? "na" : num(it->second.first / static_cast<double>(it->second.second))) + "\n";
      }
    }
    write_file(dir / "means.csv", means);
    out << means;
    return kExitOk;
  });
}

int cmd_compare(const CompareOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto a = resolve(o.a);
    const auto b = resolve(o.b);
    const auto& reg = fixtures::builtin_registry();
    FingerprintSet fp = o.config ? fingerprint_from_file(*o.config) : fingerprint_for_task(reg, task_of(a));
    if (o.measure) fp.traj_cfg.measure = measure_from(*o.measure);
    if (o.out) write_manifest(*o.out, "compare", o.config.value_or(""), 0);

    const auto breakdown = behave_sim_breakdown(a, b, fp, reg);
    Json rows = Json::array();
    std::size_t k = 0;
    for (const auto& [inst, start] : fp.pairs) {
      for (auto seed : fp.seeds) {
        rows.push_back({{"instance_id", inst}, {"start_id", start}, {"seed", seed}, {"sim", breakdown[k++]}});
      }
    }
    const Json result = {{"a", a.id()},
                         {"b", b.id()},
                         {"measure", measure_name(fp.traj_cfg.measure)},
                         {"behave_sim", behave_sim(a, b, fp, reg)},
                         {"breakdown", std::move(rows)}};
    const std::string text = result.dump(2) + "\n";
    if (o.out) write_file(fs::path(*o.out) / "compare.json", text);
    out << text;
    return kExitOk;
  });
}

int cmd_cluster(const ClusterOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto& reg = fixtures::builtin_registry();
    const auto linkage = parse_linkage(o.linkage);
    if (!linkage) throw Error(Errc::BadConfig, "--linkage must be average, complete or single");

    std::vector<ScoredAlgorithm> algos;
    std::optional<FingerprintSet> fp;
    if (o.snapshot) {
      const Json j = read_json_file(*o.snapshot);
      const bool report = j.contains("snapshot");
      algos = search::snapshot_members(report ? j["snapshot"] : j);
      if (report && j.contains("config") && j["config"].contains("fingerprint")) {
        fp = fingerprint_from_json(j["config"]["fingerprint"]);
      }
      if (o.sample > 0 && o.sample < algos.size()) {
        std::vector<std::size_t> idx(algos.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        Rng rng(o.seed);
        rng.shuffle(idx);
        idx.resize(o.sample);
        std::sort(idx.begin(), idx.end());
        std::vector<ScoredAlgorithm> kept;
        for (auto i : idx) kept.push_back(algos[i]);
        algos = std::move(kept);
      }
    }
    for (const auto& text : o.algos) algos.push_back({resolve(text), 0.0, {}, 0});
    if (algos.size() < 2) throw Error(Errc::TooFewMembers, "clustering needs at least two algorithms");
    if (o.config) fp = fingerprint_from_file(*o.config);
    if (!fp) fp = fingerprint_for_task(reg, task_of(algos.front().spec));

    write_manifest(o.out, "cluster", o.snapshot.value_or(o.config.value_or("")), o.seed);

    std::vector<std::string> labels;
    for (std::size_t i = 0; i < algos.size(); ++i) {
      labels.push_back(algos[i].spec.is_dsl() ? "h" + std::to_string(i) : algos[i].spec.id());
    }
    const std::size_t n = algos.size();
    Matrix sim(n, n);
    if (o.measure == "ngram" || o.measure == "tree") {
      for (std::size_t i = 0; i < n; ++i) {
        sim(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
          const double s = o.measure == "ngram" ? ngram_sim(algos[i].spec, algos[j].spec)
                                                : tree_edit_sim(algos[i].spec, algos[j].spec);
          sim(i, j) = s;
          sim(j, i) = s;
        }
      }
    } else {
      fp->traj_cfg.measure = measure_from(o.measure);
      parallel_for(n, o.workers, [&](std::size_t i) { algos[i].trajs = record_fingerprint(algos[i].spec, *fp, reg); });
      sim = sim_matrix(algos, fp->traj_cfg, &reg, o.workers);
    }
    const Dendrogram d = agglomerate(sim, *linkage, labels);

    const fs::path dir(o.out);
    write_file(dir / "similarity.csv", matrix_csv(sim, labels));
    write_file(dir / "dendrogram.json", to_json(d).dump(2) + "\n");
    write_file(dir / "tree.newick", to_newick(d) + "\n");
    std::string members = "label,fitness,text\n";
    for (std::size_t i = 0; i < n; ++i) {
      members += csv_field(labels[i]) + "," + num(algos[i].fitness) + "," + csv_field(algos[i].spec.id()) + "\n";
    }
    write_file(dir / "members.csv", members);
    out << "clustered " << n << " algorithms into " << dir.string() << "\n";
    return kExitOk;
  });
}

int cmd_search(const SearchOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    search::SearchConfig cfg = search::search_config_from_json(read_json_file(o.config));
    if (o.seed) cfg.seed = *o.seed;
    if (o.mode) {
      const auto m = search::parse_mode(*o.mode);
      if (!m) throw Error(Errc::BadConfig, "--mode must be funsearch or eoh");
      cfg.mode = *m;
    }
    const fs::path dir(o.out);
    write_manifest(dir, "search", o.config, cfg.seed);
    auto gen = search::make_generator(cfg);  // fails before any evaluation when the endpoint is unusable
    const auto report = search::run_search(cfg, cfg.mode, *gen, fixtures::builtin_registry(), o.workers);
    write_file(dir / "report.json", search::to_json(report).dump(2) + "\n");
    write_file(dir / "curve.csv", search::curve_csv(report));
    write_file(dir / "checkpoints.csv", search::checkpoint_csv(report));
    out << "top1 " << num(report.top1) << " top10 " << num(report.top10) << " after " << report.evaluations
        << " evaluations\n";
    return kExitOk;
  });
}

int cmd_traj(const TrajOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (o.instance.has_value() == o.instance_file.has_value()) {
      throw Error(Errc::BadConfig, "give exactly one of --instance and --instance-file");
    }
    const auto spec = resolve(o.algo);
    const ProblemInstance inst =
        o.instance ? fixtures::builtin_registry().get(*o.instance) : instance_from_json(read_json_file(*o.instance_file));
    const fs::path dir(o.out);
    write_manifest(dir, "traj", o.instance_file.value_or(""), o.seed);
    const PSTraj t = zoo::run_algorithm(spec, inst, o.start, o.seed);
    std::string text = Json{{"meta", to_json(t.meta)}, {"steps", t.steps.size()}}.dump() + "\n";
    for (const auto& s : t.steps) text += to_json(s).dump() + "\n";
    write_file(dir / "trajectory.jsonl", text);
    out << t.steps.size() << " steps written to " << (dir / "trajectory.jsonl").string() << "\n";
    return kExitOk;
  });
}

std::string dataset_manifest_text() {
  Json pairs = Json::array();
  for (const auto& p : zoo::dataset_pairs()) {
    pairs.push_back({{"type", zoo::pair_type_name(p.type_tag)}, {"case", p.case_label}, {"left", p.left}, {"right", p.right}});
  }
  Json algos = Json::array();
  for (const auto& a : zoo::algorithms()) {
    algos.push_back({{"id", a.id}, {"task", task_name(a.task)}, {"pseudocode", a.pseudocode}});
  }
  return Json{{"pairs", std::move(pairs)}, {"algorithms", std::move(algos)}, {"fixtures", fixtures::builtin_registry().ids()}}
             .dump(2) +
         "\n";
}

std::string fixture_text(const std::string& id) { return to_json(fixtures::builtin_registry().get(id)).dump(2) + "\n"; }

int cmd_manifest(const std::string& path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    write_file(path, dataset_manifest_text());
    out << "wrote " << path << "\n";
    return kExitOk;
  });
}

int cmd_fixtures(const std::string& dir, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto ids = fixtures::builtin_registry().ids();
    for (const auto& id : ids) write_file(fs::path(dir) / (id + ".json"), fixture_text(id));
    out << "wrote " << ids.size() << " fixtures to " << dir << "\n";
    return kExitOk;
  });
}

// ---------------------------------------------------------------------------

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Behavioral similarity of iterative algorithms from their problem-solving trajectories", "pstraj"};
  app.set_version_flag("--version", PSTRAJ_VERSION);
  app.require_subcommand(1);

  DatasetEvalOptions de;
  auto* c_de = app.add_subcommand("dataset-eval", "Score every benchmark pair under each measure");
  c_de->add_option("--out", de.out, "Output directory")->required();
  c_de->add_option("--measures", de.measures, "behavesim, ngram, tree")->delimiter(',');
  c_de->add_option("--measure", de.traj_measure, "Trajectory measure behind behavesim: dtw|mean|erp|cosine");
  c_de->add_option("--config", de.config, "Trajectory config JSON");
  c_de->add_option("--workers", de.workers)->check(CLI::PositiveNumber);

  CompareOptions cmp;
  auto* c_cmp = app.add_subcommand("compare", "BehaveSim of two algorithms with a per-entry breakdown");
  c_cmp->add_option("a", cmp.a, "Zoo id or S-expression")->required();
  c_cmp->add_option("b", cmp.b, "Zoo id or S-expression")->required();
  c_cmp->add_option("--config", cmp.config, "Fingerprint JSON");
  c_cmp->add_option("--measure", cmp.measure, "dtw|mean|erp|cosine");
  c_cmp->add_option("--out", cmp.out, "Also write compare.json and a manifest here");

  ClusterOptions cl;
  auto* c_cl = app.add_subcommand("cluster", "Hierarchical clustering of a population");
  c_cl->add_option("--snapshot", cl.snapshot, "Search report or snapshot JSON");
  c_cl->add_option("--algos", cl.algos, "Comma-separated zoo ids or S-expressions")->delimiter(',');
  c_cl->add_option("--config", cl.config, "Fingerprint JSON");
  c_cl->add_option("--measure", cl.measure, "dtw|mean|erp|cosine|ngram|tree");
  c_cl->add_option("--linkage", cl.linkage, "average|complete|single");
  c_cl->add_option("--sample", cl.sample, "Cluster this many seeded random snapshot members");
  c_cl->add_option("--seed", cl.seed);
  c_cl->add_option("--workers", cl.workers)->check(CLI::PositiveNumber);
  c_cl->add_option("--out", cl.out, "Output directory")->required();

  SearchOptions so;
  auto* c_s = app.add_subcommand("search", "Run an island-database or dominance-dissimilarity search");
  c_s->add_option("--config", so.config, "Search config JSON")->required();
  c_s->add_option("--out", so.out, "Output directory")->required();
  c_s->add_option("--seed", so.seed, "Overrides the config seed");
  c_s->add_option("--mode", so.mode, "funsearch|eoh, overrides the config");
  c_s->add_option("--workers", so.workers)->check(CLI::PositiveNumber);

  TrajOptions tr;
  auto* c_t = app.add_subcommand("traj", "Record one trajectory as JSONL");
  c_t->add_option("--algo", tr.algo, "Zoo id or S-expression")->required();
  c_t->add_option("--instance", tr.instance, "Built-in fixture id");
  c_t->add_option("--instance-file", tr.instance_file, "Problem instance JSON");
  c_t->add_option("--start", tr.start, "Start point id");
  c_t->add_option("--seed", tr.seed);
  c_t->add_option("--out", tr.out, "Output directory")->required();

  std::string manifest_path;
  auto* c_m = app.add_subcommand("manifest", "Write the dataset manifest");
  c_m->add_option("--out", manifest_path, "Output file")->required();

  std::string fixture_dir;
  auto* c_f = app.add_subcommand("fixtures", "Write every built-in fixture as JSON");
  c_f->add_option("--out", fixture_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUser;
  }

  if (c_de->parsed()) return cmd_dataset_eval(de, out, err);
  if (c_cmp->parsed()) return cmd_compare(cmp, out, err);
  if (c_cl->parsed()) return cmd_cluster(cl, out, err);
  if (c_s->parsed()) return cmd_search(so, out, err);
  if (c_t->parsed()) return cmd_traj(tr, out, err);
  if (c_m->parsed()) return cmd_manifest(manifest_path, out, err);
  return cmd_fixtures(fixture_dir, out, err);
}

}  // namespace pstraj::cli
