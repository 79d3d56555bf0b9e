#include "sketchfeas/instance.hpp"

#include "sketchfeas/error.hpp"

namespace sketchfeas {

FeasInstance::FeasInstance(DenseMatrix a, DenseVector rhs, Domain d)
    : A(std::move(a)), b(std::move(rhs)), domain(d) {
  if (b.size() != A.rows()) {
    throw UsageError("FeasInstance: b has " + std::to_string(b.size()) + " entries but A has " +
                     std::to_string(A.rows()) + " rows");
  }
}

std::string to_string(Domain d) { return d == Domain::ContinuousNonneg ? "lp" : "ip"; }

std::string to_string(Label l) { return l == Label::Feasible ? "feasible" : "infeasible"; }

std::string to_string(Distribution d) {
  switch (d) {
    case Distribution::Uniform01: return "uniform";
    case Distribution::Exponential: return "exp";
    case Distribution::Gamma: return "gamma";
  }
  return "unknown";
}

}  // namespace sketchfeas
