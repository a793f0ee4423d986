#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ruinband {

enum class ErrorCode {
  DomainError,
  GammaInfiniteActivity,
  NpcViolated,
  NoRoot,
  NoConvergence,
  DegenerateDenominator,
  MomentDiverges,
  QuadratureFail,
  NegativeQuadForm,
  StepTooCoarse,
  EpsilonZero,
  InsufficientData,
  MissingGrid,
  NpcViolatedAtEstimate,
  InvalidArgument,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Numerical and validation failures carry a machine-readable code so the CLI
// can map them onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  // Validation-type failures (bad input) as opposed to numerical ones.
  bool is_validation() const noexcept {
    return code_ == ErrorCode::InvalidArgument || code_ == ErrorCode::IoError ||
           code_ == ErrorCode::InsufficientData || code_ == ErrorCode::MissingGrid ||
           code_ == ErrorCode::EpsilonZero || code_ == ErrorCode::StepTooCoarse;
  }

 private:
  ErrorCode code_;
};

}  // namespace ruinband
