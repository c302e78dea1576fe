#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "pstraj/types.hpp"

namespace pstraj::zoo {

/// f(x, y) = (1 - x)^2 + 100 (y - x^2)^2
double rosenbrock(const std::array<double, 2>& p);
std::array<double, 2> rosenbrock_grad(const std::array<double, 2>& p);

/// The eight registered optimizer ids.
const std::vector<std::string_view>& optimizer_ids();

struct OptimizerOptions {
  std::size_t steps = 200;
  /// Overrides the method's default step size (sgd, momentum, adam).
  std::optional<double> learning_rate;
  double gradient_tolerance = 1e-8;
  std::array<double, 2> box_lo{-10.0, -10.0};
  std::array<double, 2> box_hi{10.0, 10.0};
};

struct OptimizerRun {
  std::vector<Solution> steps;
  /// An iterate left the box; steps end at the last in-box iterate.
  bool diverged = false;
};

/// Records the start point and then the iterate after every outer iteration,
/// stopping at the step budget or once the gradient norm falls below the
/// tolerance. Throws UnknownAlgorithm.
OptimizerRun run_optimizer(std::string_view id, const std::array<double, 2>& start, const OptimizerOptions& opts = {},
                           std::uint64_t seed = 0);

}  // namespace pstraj::zoo
