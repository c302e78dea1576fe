#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "doctest.h"
#include "pstraj/behavesim.hpp"
#include "pstraj/cluster.hpp"
#include "pstraj/search/evaluate.hpp"
#include "pstraj/search/run.hpp"
#include "pstraj/zoo/zoo.hpp"

using namespace pstraj;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "pstraj");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f);
  return {std::istreambuf_iterator<char>(f), {}};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("pstraj_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string operator/(const std::string& leaf) const { return (path_ / leaf).string(); }

 private:
  fs::path path_;
};

void write(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

}  // namespace

TEST_CASE("dataset-eval writes one row per pair and measure") {
  TempDir tmp;
  const auto r = run_cli({"dataset-eval", "--out", tmp / "de", "--workers", "4"});
  REQUIRE(r.code == 0);
  const auto rows = lines_of(slurp(tmp.path() / "de" / "pairs.csv"));
  REQUIRE(rows.size() == 1 + 90);
  CHECK(rows[0] == "type,case,measure,value");
  std::size_t t3 = 0;
  for (const auto& row : rows) {
    if (row.rfind("T3,", 0) == 0 && row.find(",behavesim,") != std::string::npos) {
      CHECK(row.substr(row.rfind(',') + 1) == "1");
      ++t3;
    }
  }
  CHECK(t3 == 6);
  CHECK(fs::exists(tmp.path() / "de" / "manifest.json"));
  CHECK(lines_of(slurp(tmp.path() / "de" / "means.csv")).size() == 1 + 12);
  CHECK(r.out == slurp(tmp.path() / "de" / "means.csv"));
}

TEST_CASE("compare agrees with the library to the last bit") {
  const auto r = run_cli({"compare", "tsp_nearest_neighbor", "tsp_farthest_neighbor"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  const auto& reg = fixtures::builtin_registry();
  const auto fp = fingerprint_for_task(reg, Task::Tsp);
  const double lib = behave_sim(zoo::spec("tsp_nearest_neighbor"), zoo::spec("tsp_farthest_neighbor"), fp, reg);
  CHECK(j["behave_sim"].get<double>() == lib);
  CHECK(j["measure"] == "dtw");
  CHECK(j["breakdown"].size() == fp.pairs.size() * fp.seeds.size());

  const auto mean = run_cli({"compare", "tsp_nearest_neighbor", "(feat dist_to_current)", "--measure", "mean"});
  REQUIRE(mean.code == 0);
  CHECK(Json::parse(mean.out)["behave_sim"].get<double>() == 1.0);
}

TEST_CASE("cluster round trips a search snapshot") {
  TempDir tmp;
  Rng rng(30);
  Json members = Json::array();
  for (int i = 0; i < 30; ++i) {
    members.push_back({{"spec", to_json(AlgorithmSpec::dsl(search::random_expr(rng, 4)))}, {"fitness", 0.01 * i}});
  }
  write(tmp.path() / "snap.json", Json{{"population", members}}.dump());
  const auto r = run_cli({"cluster", "--snapshot", tmp / "snap.json", "--out", tmp / "cl", "--workers", "4"});
  REQUIRE(r.code == 0);
  const auto d = dendrogram_from_json(Json::parse(slurp(tmp.path() / "cl" / "dendrogram.json")));
  CHECK(d.merges.size() == 29);
  for (std::size_t k = 1; k < d.merges.size(); ++k) CHECK(d.merges[k].distance >= d.merges[k - 1].distance - 1e-12);
  CHECK(to_json(parse_newick(slurp(tmp.path() / "cl" / "tree.newick"))) == to_json(d));
  CHECK(lines_of(slurp(tmp.path() / "cl" / "members.csv")).size() == 31);
  CHECK(lines_of(slurp(tmp.path() / "cl" / "similarity.csv")).size() == 31);

  const auto sampled =
      run_cli({"cluster", "--snapshot", tmp / "snap.json", "--sample", "8", "--seed", "3", "--out", tmp / "s8"});
  REQUIRE(sampled.code == 0);
  CHECK(lines_of(slurp(tmp.path() / "s8" / "members.csv")).size() == 9);
}

TEST_CASE("behavioral clones join at zero height") {
  TempDir tmp;
  const auto r = run_cli({"cluster", "--algos", "tsp_nearest_neighbor,(feat dist_to_current),tsp_farthest_neighbor",
                          "--out", tmp / "cl"});
  REQUIRE(r.code == 0);
  const auto d = dendrogram_from_json(Json::parse(slurp(tmp.path() / "cl" / "dendrogram.json")));
  REQUIRE(d.merges.size() == 2);
  CHECK(d.merges[0].left == 0);
  CHECK(d.merges[0].right == 1);
  CHECK(d.merges[0].distance == 0.0);
  CHECK(d.merges[1].distance > 0.0);
}

TEST_CASE("exit codes") {
  TempDir tmp;
  CHECK(run_cli({"compare", "no_such_algorithm", "tsp_nearest_neighbor"}).code == 2);
  CHECK(run_cli({"dataset-eval", "--out", tmp / "x", "--measures", "vibes"}).code == 2);
  CHECK(run_cli({"cluster", "--algos", "tsp_nearest_neighbor", "--out", tmp / "one"}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"traj", "--algo", "bubble_sort", "--out", tmp / "t"}).code == 2);
  write(tmp.path() / "broken.json", "{not json");
  CHECK(run_cli({"search", "--config", tmp / "broken.json", "--out", tmp / "s"}).code == 2);

  auto cfg = search::default_search_config();
  search::LlmConfig llm;
  llm.api_key_env = "PSTRAJ_CLI_TEST_UNSET_KEY";
  cfg.generator = llm;
  unsetenv("PSTRAJ_CLI_TEST_UNSET_KEY");
  write(tmp.path() / "llm.json", search::to_json(cfg).dump());
  const auto r = run_cli({"search", "--config", tmp / "llm.json", "--out", tmp / "s"});
  CHECK(r.code == 3);
  CHECK(r.err.find("GeneratorUnavailable") != std::string::npos);
}

TEST_CASE("traj writes a header and one line per step, reproducibly") {
  TempDir tmp;
  ProblemInstance p;
  p.id = "arr";
  p.task = Task::Sort;
  p.data = SortData{{3, 1, 2}};
  p.start_points = {{"0", 0u}};
  write(tmp.path() / "arr.json", to_json(p).dump());
  REQUIRE(run_cli({"traj", "--algo", "bubble_sort", "--instance-file", tmp / "arr.json", "--out", tmp / "a"}).code == 0);
  REQUIRE(run_cli({"traj", "--algo", "bubble_sort", "--instance-file", tmp / "arr.json", "--out", tmp / "b"}).code == 0);
  const auto a = slurp(tmp.path() / "a" / "trajectory.jsonl");
  CHECK(a == slurp(tmp.path() / "b" / "trajectory.jsonl"));
  const auto rows = lines_of(a);
  REQUIRE(rows.size() == 4);
  CHECK(Json::parse(rows[0])["steps"] == 3);
  CHECK(solution_from_json(Json::parse(rows[3])) == Solution::perm({1, 2, 3}));
}

TEST_CASE("shipped data files match what the library generates") {
  const fs::path data(PSTRAJ_DATA_DIR);
  CHECK(slurp(data / "dataset_manifest.json") == cli::dataset_manifest_text());
  for (const auto& id : fixtures::builtin_registry().ids()) {
    CAPTURE(id);
    CHECK(slurp(data / "fixtures" / (id + ".json")) == cli::fixture_text(id));
    CHECK(to_json(instance_from_json(Json::parse(slurp(data / "fixtures" / (id + ".json"))))) ==
          to_json(fixtures::builtin_registry().get(id)));
  }
}

TEST_CASE("search runs end to end from the shipped default config") {
  const fs::path config = fs::path(PSTRAJ_DATA_DIR) / "search_default.json";
  CHECK(slurp(config) == search::to_json(search::default_search_config()).dump(2) + "\n");

  TempDir tmp;
  const auto r = run_cli({"search", "--config", config.string(), "--seed", "4", "--out", tmp / "s", "--workers", "2"});
  REQUIRE(r.code == 0);
  const auto report = Json::parse(slurp(tmp.path() / "s" / "report.json"));
  CHECK(report["seed"] == 4);
  CHECK(report["evaluations"] == 300);
  CHECK(lines_of(slurp(tmp.path() / "s" / "curve.csv")).size() == 301);
  CHECK(Json::parse(slurp(tmp.path() / "s" / "manifest.json"))["seed"] == 4);

  // the report feeds straight back into clustering
  const auto cl = run_cli({"cluster", "--snapshot", tmp / "s/report.json", "--sample", "12", "--out", tmp / "c"});
  CHECK(cl.code == 0);
}
