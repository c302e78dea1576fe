#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pstraj/fixtures.hpp"
#include "pstraj/json_io.hpp"
#include "pstraj/trajsim.hpp"
#include "pstraj/types.hpp"

namespace pstraj {

enum class Linkage { Average, Complete, Single };

std::string_view linkage_name(Linkage l) noexcept;
std::optional<Linkage> parse_linkage(std::string_view name) noexcept;

/// Leaves are nodes 0..n-1; merge k creates node n + k. left < right.
struct Merge {
  std::size_t left = 0;
  std::size_t right = 0;
  double distance = 0.0;
  std::size_t node = 0;
  bool operator==(const Merge&) const = default;
};

struct Dendrogram {
  std::vector<Merge> merges;
  std::vector<std::string> leaves;
  bool operator==(const Dendrogram&) const = default;
};

/// Agglomerative clustering on 1 - M. Among equally close cluster pairs the
/// one with the smallest (node, node) id pair merges first.
/// Throws BadMatrix unless M is square, symmetric, in [0, 1], unit diagonal.
/// Leaf labels default to "0".."n-1".
Dendrogram agglomerate(const Matrix& sim, Linkage linkage = Linkage::Average, std::vector<std::string> leaves = {});

/// Undoes the last k - 1 merges. Clusters hold leaf indices in ascending
/// order and are sorted by their smallest leaf. Throws BadK.
std::vector<std::vector<std::size_t>> cut_k(const Dendrogram& d, std::size_t k);

/// Mean of 1 - behave_sim_traj over unordered member pairs. Throws TooFewMembers.
double intra_island_distance(std::span<const std::vector<PSTraj>> members, const TrajSimConfig& cfg,
                             const InstanceRegistry* reg = nullptr);

/// Mean of 1 - behave_sim_traj over cross pairs. Throws EmptyIsland.
double inter_island_distance(std::span<const std::vector<PSTraj>> a, std::span<const std::vector<PSTraj>> b,
                             const TrajSimConfig& cfg, const InstanceRegistry* reg = nullptr);

enum class RankMethod { KendallTau, Spearman };

/// Kendall tau-b or Spearman rho (average ranks for ties).
/// Throws LengthMismatch or DegenerateConstantInput.
double rank_correlation(std::span<const double> a, std::span<const double> b, RankMethod method);

Json to_json(const Dendrogram& d);
Dendrogram dendrogram_from_json(const Json& j);

/// Newick text with branch lengths (parent height - child height). Every
/// node also carries a "[&id=..,height=..]" comment so the exact merge
/// list survives a round trip through parse_newick.
std::string to_newick(const Dendrogram& d);
/// Throws ParseFailure. Without id/height comments, node order and heights
/// are rebuilt from the branch lengths.
Dendrogram parse_newick(std::string_view text);

}  // namespace pstraj
