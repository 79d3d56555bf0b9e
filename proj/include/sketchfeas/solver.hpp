#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "sketchfeas/instance.hpp"
#include "sketchfeas/numerics.hpp"

namespace sketchfeas {

struct SolverOptions {
  double tau_feas = 1e-7;   // relative feasibility / certificate tolerance
  double tau_pivot = 1e-9;  // smallest admissible pivot and reduced cost
  // 0 means 50·(m + n) for the instance at hand.
  std::size_t max_iters = 0;
  std::size_t bnb_node_cap = 1'000'000;
  double bnb_bound_cap = 1e6;

  std::size_t iteration_limit(std::size_t m, std::size_t n) const noexcept {
    return max_iters != 0 ? max_iters : 50 * (m + n);
  }
};

enum class Status { Feasible, Infeasible, Unknown };

std::string to_string(Status s);

struct Verdict {
  Status status = Status::Unknown;
  std::optional<DenseVector> witness;      // x with Ax = b, x >= 0
  std::optional<DenseVector> certificate;  // y with yᵀA <= 0, yᵀb > 0
  std::size_t iterations = 0;              // simplex pivots, or B&B nodes for IP
  std::string note;
};

// Phase-I simplex on artificial variables. Feasible carries a witness,
// Infeasible carries a Farkas certificate read from the final duals.
// Throws IterationLimitError when max_iters is exceeded.
Verdict solve_lp_feasibility(const FeasInstance& inst, const SolverOptions& opts = {});

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LpStatus s);

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::optional<DenseVector> x;            // Optimal
  double objective = 0.0;                  // Optimal
  std::optional<DenseVector> ray;          // Unbounded: r >= 0, Ar = 0, cᵀr < 0
  std::optional<DenseVector> certificate;  // Infeasible: Farkas vector
  std::size_t iterations = 0;
};

// min cᵀx over {Ax = b, x >= 0}, phase I then phase II.
LpResult solve_lp(const DenseVector& c, const FeasInstance& inst, const SolverOptions& opts = {});

// Depth-first branch-and-bound over the LP relaxation. Unknown (not an error)
// when the node cap is reached or when a variable bound had to be capped at
// bnb_bound_cap and the capped tree holds no integer point.
Verdict solve_ip_feasibility(const FeasInstance& inst, const SolverOptions& opts = {});

// Dispatches on the instance domain.
Verdict solve(const FeasInstance& inst, const SolverOptions& opts = {});

// ‖Ax − b‖ <= τ(1 + ‖b‖), x >= −τ and, for integer instances, every x_j
// within τ of an integer.
bool check_witness(const FeasInstance& inst, const DenseVector& x, double tau);

// yᵀa_i <= τ‖a_i‖ for every column and yᵀb >= τ‖b‖.
bool check_farkas(const FeasInstance& inst, const DenseVector& y, double tau);

}  // namespace sketchfeas
