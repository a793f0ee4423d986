#pragma once

#include <array>
#include <vector>

#include "ruinband/models.hpp"

namespace ruinband {

// Values on the uniform grid {0, step, 2 step, ..., u_max}.
struct GridFunction {
  double step = 0.0;
  std::vector<double> values;

  double u_max() const { return step * static_cast<double>(values.size() - 1); }
  double node(std::size_t i) const { return step * static_cast<double>(i); }
  /// Linear interpolation; throws DomainError outside [0, u_max].
  double at(double u) const;
};

inline constexpr double kDefaultOracleUMax = 30.0;
inline constexpr int kDefaultOracleCells = 4096;

/// Ruin probability from psi = psi * g + h. The convolution uses the
/// product trapezoid rule: psi is interpolated linearly between nodes and
/// integrated exactly against g on each cell, which keeps second order
/// accuracy when g is singular at 0.
/// Errors: StepTooCoarse when step > u_max/100, NpcViolated.
GridFunction solve_psi(const ModelSpec& model, double u_max = kDefaultOracleUMax,
                       double step = kDefaultOracleUMax / kDefaultOracleCells);

/// theta-gradient of psi from the differentiated equation
///   psi' = psi' * g + [h' + psi * g'],
/// one grid per theta component (zero for a fixed D).
std::array<GridFunction, kThetaDim> solve_dot_psi(
    const ModelSpec& model, double u_max = kDefaultOracleUMax,
    double step = kDefaultOracleUMax / kDefaultOracleCells);

/// Central differences of solve_psi in each free theta coordinate, with
/// coordinate step rel_step * theta_i. Errors: InvalidArgument for
/// rel_step outside [1e-6, 1e-2]; NpcViolated when a shifted model fails NPC.
ThetaVector finite_diff_dot_psi(const ModelSpec& model, double u, double rel_step,
                                double u_max = kDefaultOracleUMax,
                                double step = kDefaultOracleUMax / kDefaultOracleCells);

}  // namespace ruinband
