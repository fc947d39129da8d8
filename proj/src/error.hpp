#pragma once

#include <stdexcept>
#include <string>

namespace mc {

enum class Err {
  InvalidArgument = 1,
  NonConvex,
  OriginNotInterior,
  InconsistentGenus,
  NotTempered,
  NotReflexive,
  NonPositiveCoefficients,
  OutsideDomain,
  InsufficientOrder,
  NoOperatorFound,
  QuadratureFailure,
  BracketFailure,
  Overflow,
  NotConverged,
  TailDominates,
  PathCrossesBranchPoint,
  PoleAtOneOrZero,
  ParametrizationFailure,
  TailEstimateUnreliable,
  Io,
  Internal
};

const char* err_name(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

}  // namespace mc
