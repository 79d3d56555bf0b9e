#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sketchfeas/instance.hpp"
#include "sketchfeas/projector.hpp"
#include "sketchfeas/solver.hpp"

namespace sketchfeas {

struct McEstimate {
  std::size_t trials = 0;
  std::size_t successes = 0;
  double rate = 0.0;
  double wilson_low = 0.0;  // 95% lower confidence limit
  // Set when a preservation run was handed a feasible instance: success is
  // then guaranteed by linearity and the rate says nothing about the bound.
  bool wrong_direction = false;
};

// Lower limit of the two-sided 95% Wilson score interval.
double wilson_lower(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

McEstimate make_estimate(std::size_t successes, std::size_t trials);

enum class DistortionCriterion {
  Norm,         // (1−ε)‖x‖ <= ‖T(x)‖ <= (1+ε)‖x‖
  SquaredNorm,  // (1−ε)‖x‖² <= ‖T(x)‖² <= (1+ε)‖x‖²
};

// ‖T(x)‖ for trial t: a fresh projector and a fresh uniformly random unit x,
// both derived from (seed, t).
double distortion_trial(ProjectorFamily family, std::size_t k, std::size_t m, std::uint64_t seed,
                        std::size_t trial);

bool distortion_success(double projected_norm, double eps, DistortionCriterion criterion);

McEstimate estimate_distortion(ProjectorFamily family, std::size_t k, std::size_t m, double eps,
                               std::size_t trials, std::uint64_t seed,
                               DistortionCriterion criterion = DistortionCriterion::Norm);

// Success when ‖T(x)‖ > 1e-12 for a fresh nonzero x.
McEstimate estimate_kernel_avoidance(ProjectorFamily family, std::size_t k, std::size_t m,
                                     std::size_t trials, std::uint64_t seed);

// One fresh projector per trial (seed derive_seed(seed, j)); success when the
// projected instance keeps the certified label of `inst`.
McEstimate estimate_infeasibility_preservation(const FeasInstance& inst, ProjectorFamily family,
                                               std::size_t k, std::size_t projectors,
                                               std::uint64_t seed,
                                               const SolverOptions& opts = {});

struct CalibrationPoint {
  double eps;
  std::size_t k;
  McEstimate estimate;
  double c_limit;  // largest C this point admits
};

struct Calibration {
  double c_hat;
  std::vector<CalibrationPoint> points;
};

// Largest C with 1 − 2exp(−C ε² k) <= wilson_low at every grid point. Each k
// is run once with source dimension m = k; the ε values share those trials.
Calibration calibrate(ProjectorFamily family, const std::vector<double>& eps_grid,
                      const std::vector<std::size_t>& k_grid, std::size_t trials,
                      std::uint64_t seed);

double calibrate_C(ProjectorFamily family, const std::vector<double>& eps_grid,
                   const std::vector<std::size_t>& k_grid, std::size_t trials, std::uint64_t seed);

}  // namespace sketchfeas
