#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sketchfeas/instance.hpp"
#include "sketchfeas/solver.hpp"

namespace sketchfeas {

// Uniform01 on [0,1), Exponential with rate 1, Gamma with shape 2 and scale 1.
struct GenSpec {
  Distribution dist = Distribution::Uniform01;
  std::size_t m = 1;
  std::size_t n = 1;
  Label target = Label::Infeasible;
  bool normalize_columns = false;
  std::uint64_t seed = 0;
  Domain domain = Domain::ContinuousNonneg;
};

Distribution parse_distribution(const std::string& name);

// Feasible: b = A·x* with x* drawn from the same law (rounded for integer
// instances); x* is kept as the witness. Infeasible: b is drawn, one
// uniformly chosen coordinate is negated, and the label is certified with a
// Farkas vector from solve_lp_feasibility, resampling b up to 100 times.
FeasInstance generate(const GenSpec& spec, const SolverOptions& opts = {});

// Member i uses seed derive_seed(spec.seed, i).
std::vector<FeasInstance> generate_suite(const GenSpec& spec, std::size_t count,
                                         const SolverOptions& opts = {});

}  // namespace sketchfeas
