#pragma once

#include <cstddef>

#include "pstraj/algorithm.hpp"
#include "pstraj/behavesim.hpp"
#include "pstraj/fixtures.hpp"
#include "pstraj/rng.hpp"

namespace pstraj::search {

/// Runs the candidate on every fingerprint entry and scores it by the mean
/// relative gap to the Held-Karp optimum (0 is optimal, lower is better).
/// Throws Timeout once `timeout_s` of wall clock has passed, TaskMismatch
/// for non-Tsp fingerprints, and EvaluationFailure for incomplete tours.
ScoredAlgorithm evaluate_candidate(const AlgorithmSpec& spec, const FingerprintSet& fp, const InstanceRegistry& reg,
                                   double timeout_s = 50.0);

/// Rounds to 6 significant digits, the precision the S-expression printer
/// keeps, so distinct trees always print distinctly.
double round_constant(double v);

/// Grow-method random tree with depth <= max_depth.
Expr random_expr(Rng& rng, std::size_t max_depth);

}  // namespace pstraj::search
