#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "sketchfeas/instance.hpp"
#include "sketchfeas/numerics.hpp"

namespace sketchfeas {

enum class ProjectorFamily { Gaussian, Rademacher, AchlioptasSparse };

std::string to_string(ProjectorFamily f);
ProjectorFamily parse_projector_family(const std::string& name);

// A sampled k×m sketch T(x) = scale · P x with the scale folded into `matrix`.
struct Projector {
  ProjectorFamily family;
  std::size_t k;
  std::size_t m;
  std::uint64_t seed;
  DenseMatrix matrix;
};

// Per-entry scale making E‖T(x)‖² = ‖x‖²: 1/√k for Gaussian and Rademacher,
// √(3/k) for the three-valued sparse family (entry variance 1/3).
double projector_scale(ProjectorFamily family, std::size_t k);

// Entry (i, j) is a pure function of (family, k, seed, i, j), so the matrix
// is the same for any thread count.
Projector sample_projector(ProjectorFamily family, std::size_t k, std::size_t m,
                           std::uint64_t seed);

// Wraps an explicit k×m matrix (used for identity sketches in tests).
Projector explicit_projector(DenseMatrix matrix);

DenseVector apply(const Projector& t, const DenseVector& v);

// T·v for T = sample_projector(family, k, m, seed), generated column by column
// without storing T. Agrees with apply() up to summation order.
DenseVector sample_and_apply(ProjectorFamily family, std::size_t k, std::size_t m,
                             std::uint64_t seed, const DenseVector& v);

// (T·A, T·b) with the same domain. Label, witness and certificate are not
// carried over.
FeasInstance apply_to_instance(const Projector& t, const FeasInstance& inst);

// Smallest k with points·(points−1)·exp(−C ε² k) <= δ.
std::size_t choose_k_jll(std::size_t points, double eps, double delta, double C);

// Smallest k with 2·|X|·exp(−C k) <= δ.
std::size_t choose_k_rlm(std::size_t card_X, double delta, double C);

}  // namespace sketchfeas
