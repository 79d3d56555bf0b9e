#pragma once

#include <cstddef>
#include <cstdint>

#include "sketchfeas/error.hpp"
#include "sketchfeas/numerics.hpp"
#include "sketchfeas/solver.hpp"

namespace sketchfeas {

// Unit-norm c with cᵀb <= −eps and cᵀa_i >= eps for every generator.
struct SeparationCertificate {
  DenseVector c;
  double eps;
};

// Closest point p of a cone (or hull) to b, with d = ‖b − p‖,
// D = max_i ‖b − a_i‖ and nonnegative coefficients with p = A·lambda.
struct ConeDistanceReport {
  DenseVector p;
  double d;
  double D;
  DenseVector lambda;
  std::size_t iterations;
  // Largest violation of the optimality conditions (0 at an exact optimum).
  double kkt_residual;
};

// ‖x‖_A and a minimal A-representation lambda.
struct ANormReport {
  double value;
  DenseVector lambda;
};

class ConeConvergenceError : public ConvergenceError {
 public:
  ConeConvergenceError(const std::string& what, DenseVector best_lambda)
      : ConvergenceError(what), best_lambda_(std::move(best_lambda)) {}
  const DenseVector& best_lambda() const noexcept { return best_lambda_; }

 private:
  DenseVector best_lambda_;
};

// Separating coefficient problem under ‖c‖_∞ <= 1 (an LP), then c is
// rescaled to the Euclidean sphere and eps recomputed. A and b must have unit
// columns / norm. Throws MembershipError when no positive margin exists.
SeparationCertificate scp_solve(const DenseMatrix& A, const DenseVector& b,
                                const SolverOptions& opts = {});

// Checks ‖c‖ = 1, cᵀb <= −eps + tol and cᵀa_i >= eps − tol.
bool certificate_holds(const DenseMatrix& A, const DenseVector& b,
                       const SeparationCertificate& cert, double tol = 1e-9);

// min_{λ >= 0} ‖b − Aλ‖ by Lawson–Hanson active-set NNLS. max_outer = 0
// means 3n outer iterations.
ConeDistanceReport project_onto_cone(const DenseMatrix& A, const DenseVector& b,
                                     std::size_t max_outer = 0);

// min ‖b − Aλ‖ over the simplex λ >= 0, Σλ = 1 (Wolfe's minimum-norm-point
// method on the shifted points a_i − b). max_iters = 0 means 10(n + m) + 100.
ConeDistanceReport dist_to_convhull(const DenseMatrix& A, const DenseVector& b,
                                    std::size_t max_iters = 0);

// Throws MembershipError when x is outside cone(A).
ANormReport a_norm(const DenseMatrix& A, const DenseVector& x, const SolverOptions& opts = {});

// Sampled lower bound on μ_A = max{‖x‖_A : x ∈ cone(A), ‖x‖ <= 1}. Sample s
// uses seed derive_seed(seed, s), so a larger sample count extends the same
// sequence and the bound can only grow.
double mu_a_lower_bound(const DenseMatrix& A, std::size_t samples, std::uint64_t seed,
                        const SolverOptions& opts = {});

// ‖b − x‖² >= α² − 2α‖p‖ + 1 with α = ‖x‖, p the projection of b onto cone(A).
bool claim_inequality_check(const DenseMatrix& A, const DenseVector& b, const DenseVector& x,
                            double slack = 1e-8);
// Same inequality with ‖p‖ supplied, for sweeps that reuse one projection.
double claim_inequality_slack(const DenseVector& b, const DenseVector& x, double p_norm);

}  // namespace sketchfeas
