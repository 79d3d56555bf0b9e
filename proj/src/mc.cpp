#include "sketchfeas/mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sketchfeas/error.hpp"
#include "sketchfeas/kernels.hpp"
#include "sketchfeas/rng.hpp"

namespace sketchfeas {

namespace {

constexpr std::uint64_t kProjectorStream = 0;
constexpr std::uint64_t kVectorStream = 1;

// Gaussian direction, normalized: uniform on the unit sphere.
std::vector<double> random_unit_vector(std::size_t m, std::uint64_t seed) {
  const rng::CounterStream stream(seed);
  std::vector<double> x(m);
  for (std::size_t i = 0; i < m; ++i) x[i] = stream.normal(i);
  const double norm = two_norm(x);
  for (double& v : x) v /= norm;
  return x;
}

void require_eps(double eps, const char* op) {
  if (!(eps > 0.0 && eps < 1.0)) throw UsageError(std::string(op) + ": eps must lie in (0,1)");
}

std::vector<double> distortion_norms(ProjectorFamily family, std::size_t k, std::size_t m,
                                     std::size_t trials, std::uint64_t seed) {
  std::vector<double> norms(trials);
  kernels::parallel::for_each_block(trials, 64, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) norms[t] = distortion_trial(family, k, m, seed, t);
  });
  return norms;
}

}  // namespace

double wilson_lower(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return 0.0;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double center = p + z2 / (2.0 * n);
  const double margin = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return std::max(0.0, (center - margin) / (1.0 + z2 / n));
}

McEstimate make_estimate(std::size_t successes, std::size_t trials) {
  McEstimate e;
  e.trials = trials;
  e.successes = successes;
  e.rate = trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
  e.wilson_low = wilson_lower(successes, trials);
  return e;
}

double distortion_trial(ProjectorFamily family, std::size_t k, std::size_t m, std::uint64_t seed,
                        std::size_t trial) {
  const std::uint64_t trial_seed = rng::derive_seed(seed, trial);
  const DenseVector x(random_unit_vector(m, rng::derive_seed(trial_seed, kVectorStream)));
  return two_norm(
      sample_and_apply(family, k, m, rng::derive_seed(trial_seed, kProjectorStream), x));
}

bool distortion_success(double projected_norm, double eps, DistortionCriterion criterion) {
  if (criterion == DistortionCriterion::Norm) {
    return projected_norm >= 1.0 - eps && projected_norm <= 1.0 + eps;
  }
  const double sq = projected_norm * projected_norm;
  return sq >= 1.0 - eps && sq <= 1.0 + eps;
}

McEstimate estimate_distortion(ProjectorFamily family, std::size_t k, std::size_t m, double eps,
                               std::size_t trials, std::uint64_t seed,
                               DistortionCriterion criterion) {
  require_eps(eps, "estimate_distortion");
  const std::size_t hits = kernels::parallel::count_successes(trials, [&](std::size_t t) {
    return distortion_success(distortion_trial(family, k, m, seed, t), eps, criterion);
  });
  return make_estimate(hits, trials);
}

McEstimate estimate_kernel_avoidance(ProjectorFamily family, std::size_t k, std::size_t m,
                                     std::size_t trials, std::uint64_t seed) {
  const std::size_t hits = kernels::parallel::count_successes(trials, [&](std::size_t t) {
    return distortion_trial(family, k, m, seed, t) > 1e-12;
  });
  return make_estimate(hits, trials);
}

McEstimate estimate_infeasibility_preservation(const FeasInstance& inst, ProjectorFamily family,
                                               std::size_t k, std::size_t projectors,
                                               std::uint64_t seed, const SolverOptions& opts) {
  if (!inst.label) {
    throw UsageError("estimate_infeasibility_preservation: instance carries no certified label");
  }
  const Status wanted = *inst.label == Label::Infeasible ? Status::Infeasible : Status::Feasible;
  const std::size_t hits = kernels::parallel::count_successes(projectors, [&](std::size_t j) {
    const Projector t = sample_projector(family, k, inst.rows(), rng::derive_seed(seed, j));
    return solve(apply_to_instance(t, inst), opts).status == wanted;
  });
  McEstimate e = make_estimate(hits, projectors);
  e.wrong_direction = *inst.label == Label::Feasible;
  return e;
}

Calibration calibrate(ProjectorFamily family, const std::vector<double>& eps_grid,
                      const std::vector<std::size_t>& k_grid, std::size_t trials,
                      std::uint64_t seed) {
  if (eps_grid.empty() || k_grid.empty()) throw UsageError("calibrate_C: grids must be nonempty");
  for (double eps : eps_grid) require_eps(eps, "calibrate_C");
  Calibration cal{std::numeric_limits<double>::infinity(), {}};
  for (std::size_t ki = 0; ki < k_grid.size(); ++ki) {
    const std::size_t k = k_grid[ki];
    const auto norms = distortion_norms(family, k, k, trials, rng::derive_seed(seed, ki));
    for (double eps : eps_grid) {
      std::size_t hits = 0;
      for (double v : norms) hits += distortion_success(v, eps, DistortionCriterion::Norm);
      const McEstimate est = make_estimate(hits, trials);
      // 1 − 2e^{−C ε² k} <= w  ⇔  C <= −ln((1 − w)/2) / (ε² k)
      const double limit =
          -std::log((1.0 - est.wilson_low) / 2.0) / (eps * eps * static_cast<double>(k));
      cal.points.push_back({eps, k, est, limit});
      cal.c_hat = std::min(cal.c_hat, limit);
    }
  }
  if (!(cal.c_hat > 0.0) || !std::isfinite(cal.c_hat)) {
    throw CalibrationError("calibrate_C: no positive constant fits the grid (projector bug?)");
  }
  return cal;
}

double calibrate_C(ProjectorFamily family, const std::vector<double>& eps_grid,
                   const std::vector<std::size_t>& k_grid, std::size_t trials, std::uint64_t seed) {
  return calibrate(family, eps_grid, k_grid, trials, seed).c_hat;
}

}  // namespace sketchfeas
