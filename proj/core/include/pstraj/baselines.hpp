#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pstraj/algorithm.hpp"
#include "pstraj/expr.hpp"

namespace pstraj {

/// Symmetrized token n-gram overlap: for each direction, the geometric mean
/// of clipped precisions for n = 1..min(max_n, |a|, |b|); the two
/// directions are averaged. Throws EmptyStream.
double ngram_sim(std::span<const std::string> a, std::span<const std::string> b, std::size_t max_n = 4);

/// ngram_sim over tokenize(display_text).
double ngram_sim(const AlgorithmSpec& a, const AlgorithmSpec& b, std::size_t max_n = 4);

/// Unit-cost ordered tree edit distance (Zhang-Shasha). Node labels are the
/// operator, feature name or exact constant value.
std::size_t tree_edit_distance(const Expr& a, const Expr& b);

/// 1 - TED / max(size(a), size(b)).
double tree_edit_sim(const Expr& a, const Expr& b);

/// Throws NotDsl unless both are expression heuristics.
double tree_edit_sim(const AlgorithmSpec& a, const AlgorithmSpec& b);

}  // namespace pstraj
