#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ruinband/models.hpp"
#include "ruinband/rng.hpp"

namespace ruinband {

struct Claim {
  double time = 0.0;
  double size = 0.0;
};

// Data observed on [0, T]: claims (or thresholded jumps) with arrival
// times and, optionally, the surplus on the grid {0, h, 2h, ..., T}.
struct ObservationSet {
  Family family = Family::ClassicalExp;
  double horizon = 0.0;
  double grid_step = 0.0;  // 0 when no grid was recorded
  double threshold = 0.0;  // jump threshold epsilon (gamma family)
  double initial_capital = 0.0;
  std::uint64_t seed = 0;
  std::vector<Claim> claims;
  std::vector<double> grid;

  bool has_grid() const noexcept { return !grid.empty(); }
};

/// Compound Poisson claims with exponential sizes. When grid_step is given
/// the surplus u0 + c t - S_t is also recorded on the grid.
ObservationSet simulate_classical(const ModelSpec& model, double horizon, std::uint64_t seed,
                                  std::optional<double> grid_step = std::nullopt,
                                  double initial_capital = 0.0);

/// Claims as in simulate_classical plus the surplus with a sqrt(2D) W_t
/// component sampled exactly on the grid. Claims are drawn first from the
/// same stream, so the claim list matches simulate_classical for equal seeds.
ObservationSet simulate_perturbed(const ModelSpec& model, double horizon, double grid_step,
                                  std::uint64_t seed, double initial_capital = 0.0);

/// Jumps of the gamma subordinator larger than epsilon. Count is
/// Poisson(T a E1(b eps)); sizes follow z^-1 e^-bz on (eps, inf).
/// Errors: EpsilonZero when epsilon <= 0.
ObservationSet simulate_gamma_jumps(const ModelSpec& model, double horizon, double threshold,
                                    std::uint64_t seed);

/// Inverse CDF of the normalized density z^-1 e^-bz on (eps, inf):
/// returns z with E1(bz) = (1 - p) E1(b eps), p in [0, 1).
double truncated_gamma_jump_quantile(double b, double threshold, double p);

}  // namespace ruinband
