#include "ruinband/error.hpp"

namespace ruinband {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::GammaInfiniteActivity: return "GammaInfiniteActivity";
    case ErrorCode::NpcViolated: return "NpcViolated";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::MomentDiverges: return "MomentDiverges";
    case ErrorCode::QuadratureFail: return "QuadratureFail";
    case ErrorCode::NegativeQuadForm: return "NegativeQuadForm";
    case ErrorCode::StepTooCoarse: return "StepTooCoarse";
    case ErrorCode::EpsilonZero: return "EpsilonZero";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::MissingGrid: return "MissingGrid";
    case ErrorCode::NpcViolatedAtEstimate: return "NpcViolatedAtEstimate";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace ruinband
