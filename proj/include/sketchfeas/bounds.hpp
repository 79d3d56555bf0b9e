#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "sketchfeas/numerics.hpp"

namespace sketchfeas {

// Default for the unspecified sub-Gaussian constant C. Override with a value
// fitted by calibrate_C.
inline constexpr double kDefaultC = 0.25;

enum class BoundKind { PairDistortion, RlmFinite, PointedCone, ConvHull, ConeThm2 };

std::string to_string(BoundKind kind);

struct BoundReport {
  BoundKind kind;
  std::map<std::string, double> inputs;
  double lower_bound;  // clamped to [0, 1]
  double raw;          // before clamping; negative means the bound is vacuous
  std::string note;

  bool vacuous() const noexcept { return raw <= 0.0; }
};

// The k arguments are real so that fractional k from closed-form inversions
// can be evaluated directly; callers normally pass a count.

// 1 − points(points−1)·exp(−C ε² k)
BoundReport pair_distortion_bound(std::size_t points, double eps, double k, double C = kDefaultC);
// 1 − 2|X|·exp(−C k)
BoundReport rlm_finite_bound(std::size_t card_X, double k, double C = kDefaultC);
// 1 − 4(n+1)·exp(−C(ε²−ε³)k)
BoundReport pointed_cone_bound(std::size_t n, double eps, double k, double C = kDefaultC);
// 1 − 2n²·exp(−C(ε²−ε³)k); only meaningful for ε < d²/D².
BoundReport convhull_bound(std::size_t n, double eps, double k, double C = kDefaultC);
// 1 − 2n(n+1)·exp(−C(ε²−ε³)k)
BoundReport cone_thm2_bound(std::size_t n, double eps, double k, double C = kDefaultC);

// d² / (μ_A² + 2‖p‖μ_A + 1). Requires d² = 1 − ‖p‖² (within 1e-9) when p ≠ 0.
double eps_threshold_thm2(double d, double p_norm, double mu_A);

// For X = {x ∈ {0,1}ⁿ : αᵀx <= d}: returns (d̄, n^d̄) with d̄ = max_i ⌊d/α_i⌋.
// n^d̄ saturates at UINT64_MAX.
std::pair<std::uint64_t, std::uint64_t> restricted_cardinality_bound(const DenseVector& alpha,
                                                                     double d);

}  // namespace sketchfeas
