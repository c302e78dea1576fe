#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pstraj::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUser = 2;
inline constexpr int kExitService = 3;

struct DatasetEvalOptions {
  std::string out;
  std::vector<std::string> measures{"behavesim", "ngram", "tree"};
  std::string traj_measure = "dtw";
  std::optional<std::string> config;  // trajectory config JSON
  std::size_t workers = 1;
};

struct CompareOptions {
  std::string a;
  std::string b;
  std::optional<std::string> config;  // fingerprint JSON
  std::optional<std::string> measure;
  std::optional<std::string> out;
};

struct ClusterOptions {
  std::optional<std::string> snapshot;  // search report or bare snapshot
  std::vector<std::string> algos;
  std::optional<std::string> config;  // fingerprint JSON
  std::string measure = "dtw";
  std::string linkage = "average";
  std::size_t sample = 0;  // 0 keeps every member
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::string out;
};

struct SearchOptions {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::size_t workers = 1;
};

struct TrajOptions {
  std::string algo;
  std::optional<std::string> instance;       // built-in fixture id
  std::optional<std::string> instance_file;  // ProblemInstance JSON
  std::string start = "0";
  std::uint64_t seed = 0;
  std::string out;
};

/// Each command reports failures on `err` and returns an exit code.
int cmd_dataset_eval(const DatasetEvalOptions& o, std::ostream& out, std::ostream& err);
int cmd_compare(const CompareOptions& o, std::ostream& out, std::ostream& err);
int cmd_cluster(const ClusterOptions& o, std::ostream& out, std::ostream& err);
int cmd_search(const SearchOptions& o, std::ostream& out, std::ostream& err);
int cmd_traj(const TrajOptions& o, std::ostream& out, std::ostream& err);
/// Writes the dataset manifest (pairs, pseudocode, fixture ids) to a file.
int cmd_manifest(const std::string& path, std::ostream& out, std::ostream& err);
/// Writes every built-in fixture as <dir>/<id>.json.
int cmd_fixtures(const std::string& dir, std::ostream& out, std::ostream& err);

/// The dataset manifest as pretty-printed JSON text.
std::string dataset_manifest_text();
/// A fixture as pretty-printed JSON text.
std::string fixture_text(const std::string& id);

/// Parses argv with CLI11 and dispatches.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace pstraj::cli
