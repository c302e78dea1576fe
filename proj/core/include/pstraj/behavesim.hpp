#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pstraj/algorithm.hpp"
#include "pstraj/fixtures.hpp"
#include "pstraj/json_io.hpp"
#include "pstraj/trajsim.hpp"

namespace pstraj {

/// The (instance, start) pairs and seeds every algorithm is run on.
struct FingerprintSet {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<std::uint64_t> seeds{0};
  TrajSimConfig traj_cfg;
};

/// Throws EmptyFingerprint (no pairs or no seeds) or BadConfig.
void validate_fingerprint(const FingerprintSet& fp);

/// Every start point of every registry instance whose id has `prefix`.
FingerprintSet fingerprint_for_prefix(const InstanceRegistry& reg, std::string_view prefix, TrajSimConfig cfg = {});

/// Fingerprint over the default fixtures of a task.
FingerprintSet fingerprint_for_task(const InstanceRegistry& reg, Task task, TrajSimConfig cfg = {});

/// Trajectories in fingerprint order: pairs outer, seeds inner. Runner
/// errors are rethrown with the offending (instance, start) appended.
std::vector<PSTraj> record_fingerprint(const AlgorithmSpec& a, const FingerprintSet& fp, const InstanceRegistry& reg);

/// Mean trajectory similarity over the fingerprint's pairs and seeds.
double behave_sim(const AlgorithmSpec& a, const AlgorithmSpec& b, const FingerprintSet& fp, const InstanceRegistry& reg);

/// Per-entry similarities behind behave_sim, in fingerprint order.
std::vector<double> behave_sim_breakdown(const AlgorithmSpec& a, const AlgorithmSpec& b, const FingerprintSet& fp,
                                         const InstanceRegistry& reg);

/// Mean similarity of index-aligned trajectories. Instances named in the
/// trajectory metadata supply normalization hints when `reg` is given.
/// Throws EmptyFingerprint or LengthMismatch.
double behave_sim_traj(std::span<const PSTraj> a, std::span<const PSTraj> b, const TrajSimConfig& cfg,
                       const InstanceRegistry* reg = nullptr);

/// Symmetric similarity matrix with a unit diagonal; the upper triangle is
/// computed (in parallel when workers > 1) and mirrored.
Matrix sim_matrix(std::span<const ScoredAlgorithm> algos, const TrajSimConfig& cfg,
                  const InstanceRegistry* reg = nullptr, std::size_t workers = 1);

/// CSV with a header row of labels and one labelled row per matrix row.
std::string matrix_csv(const Matrix& m, std::span<const std::string> labels);

Json to_json(const FingerprintSet& fp);
/// Missing seeds default to {0}; missing traj_cfg to the defaults.
FingerprintSet fingerprint_from_json(const Json& j);

}  // namespace pstraj
