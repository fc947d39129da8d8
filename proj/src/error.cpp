#include "error.hpp"

namespace mc {

const char* err_name(Err e) {
  switch (e) {
    case Err::InvalidArgument: return "InvalidArgument";
    case Err::NonConvex: return "NonConvex";
    case Err::OriginNotInterior: return "OriginNotInterior";
    case Err::InconsistentGenus: return "InconsistentGenus";
    case Err::NotTempered: return "NotTempered";
    case Err::NotReflexive: return "NotReflexive";
    case Err::NonPositiveCoefficients: return "NonPositiveCoefficients";
    case Err::OutsideDomain: return "OutsideDomain";
    case Err::InsufficientOrder: return "InsufficientOrder";
    case Err::NoOperatorFound: return "NoOperatorFound";
    case Err::QuadratureFailure: return "QuadratureFailure";
    case Err::BracketFailure: return "BracketFailure";
    case Err::Overflow: return "Overflow";
    case Err::NotConverged: return "NotConverged";
    case Err::TailDominates: return "TailDominates";
    case Err::PathCrossesBranchPoint: return "PathCrossesBranchPoint";
    case Err::PoleAtOneOrZero: return "PoleAtOneOrZero";
    case Err::ParametrizationFailure: return "ParametrizationFailure";
    case Err::TailEstimateUnreliable: return "TailEstimateUnreliable";
    case Err::Io: return "Io";
    case Err::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace mc
