#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pstraj {

/// Every failure the library reports carries one of these codes.
enum class Errc {
  // instance validation
  NonSquareMatrix,
  AsymmetricMatrix,
  NonzeroDiagonal,
  NegativeDistance,
  EmptyStartPoints,
  NonpositiveBound,
  BadInstanceData,
  // expressions
  MissingFeature,
  ParseFailure,
  DepthExceeded,
  // trajectories and distances
  EmptyTrajectory,
  PayloadMismatch,
  NonVectorPayload,
  TooShort,
  LengthMismatch,
  EmptyFingerprint,
  InvalidSolution,
  // zoo
  UnknownAlgorithm,
  UnknownInstance,
  TaskMismatch,
  BadStart,
  NotDsl,
  // baselines and clustering
  EmptyStream,
  BadMatrix,
  BadK,
  TooFewMembers,
  EmptyIsland,
  DegenerateConstantInput,
  // search
  EmptyPopulation,
  PopTooSmall,
  InsufficientMembers,
  NotEnoughIslands,
  FingerprintMismatch,
  EvaluationFailure,
  Timeout,
  GeneratorUnavailable,
  BadConfig,
  Io,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace pstraj
