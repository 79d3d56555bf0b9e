#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "sketchfeas/numerics.hpp"

namespace sketchfeas {

enum class Domain { ContinuousNonneg, IntegerNonneg };

enum class Label { Feasible, Infeasible };

enum class Distribution { Uniform01, Exponential, Gamma };

struct Provenance {
  Distribution dist;
  std::uint64_t seed;
};

// The system Ax = b, x >= 0 (x integer when domain is IntegerNonneg).
// Generated instances also carry their certified label and the artifact that
// certifies it: a witness x for Feasible, a Farkas vector y for Infeasible.
struct FeasInstance {
  DenseMatrix A;
  DenseVector b;
  Domain domain = Domain::ContinuousNonneg;
  std::optional<Label> label;
  std::optional<DenseVector> witness;
  std::optional<DenseVector> certificate;
  std::optional<Provenance> provenance;

  FeasInstance(DenseMatrix a, DenseVector rhs, Domain d = Domain::ContinuousNonneg);

  std::size_t rows() const noexcept { return A.rows(); }
  std::size_t cols() const noexcept { return A.cols(); }
};

std::string to_string(Domain d);
std::string to_string(Label l);
std::string to_string(Distribution d);

}  // namespace sketchfeas
