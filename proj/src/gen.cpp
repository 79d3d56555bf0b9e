#include "sketchfeas/gen.hpp"

#include <cmath>
#include <random>

#include "sketchfeas/error.hpp"
#include "sketchfeas/kernels.hpp"
#include "sketchfeas/rng.hpp"

namespace sketchfeas {

namespace {

class Sampler {
 public:
  Sampler(Distribution dist, std::uint64_t seed) : dist_(dist), engine_(seed) {}

  double operator()() {
    switch (dist_) {
      case Distribution::Uniform01: return uniform_(engine_);
      case Distribution::Exponential: return exponential_(engine_);
      case Distribution::Gamma: return gamma_(engine_);
    }
    return 0.0;
  }

  std::size_t index(std::size_t count) {
    return std::uniform_int_distribution<std::size_t>(0, count - 1)(engine_);
  }

 private:
  Distribution dist_;
  rng::SplitMix64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::exponential_distribution<double> exponential_{1.0};
  std::gamma_distribution<double> gamma_{2.0, 1.0};
};

std::string describe(const GenSpec& spec) {
  return "dist=" + to_string(spec.dist) + " m=" + std::to_string(spec.m) +
         " n=" + std::to_string(spec.n) + " target=" + to_string(spec.target) +
         " seed=" + std::to_string(spec.seed);
}

void validate(const GenSpec& spec) {
  if (spec.m < 1 || spec.n < 1) throw UsageError("generate: m and n must be >= 1");
  if (spec.target == Label::Feasible && spec.m > spec.n) {
    throw UsageError("generate: feasible targets need m <= n (full row rank convention)");
  }
  if (spec.normalize_columns && spec.domain == Domain::IntegerNonneg &&
      spec.target == Label::Feasible) {
    throw UsageError("generate: column normalization would break the integer witness");
  }
}

}  // namespace

Distribution parse_distribution(const std::string& name) {
  if (name == "uniform") return Distribution::Uniform01;
  if (name == "exp" || name == "exponential") return Distribution::Exponential;
  if (name == "gamma") return Distribution::Gamma;
  throw UsageError("unknown distribution '" + name + "' (expected uniform|exp|gamma)");
}

FeasInstance generate(const GenSpec& spec, const SolverOptions& opts) {
  validate(spec);
  const std::size_t m = spec.m;
  const std::size_t n = spec.n;
  Sampler draw(spec.dist, spec.seed);

  std::vector<double> a(m * n);
  for (double& v : a) v = draw();
  std::vector<double> col_norm(n, 1.0);
  if (spec.normalize_columns) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += a[j * m + i] * a[j * m + i];
      if (s == 0.0) throw GenerationError("generate: drew a zero column (" + describe(spec) + ")");
      col_norm[j] = std::sqrt(s);
      for (std::size_t i = 0; i < m; ++i) a[j * m + i] /= col_norm[j];
    }
  }
  DenseMatrix A(m, n, std::move(a));

  if (spec.target == Label::Feasible) {
    std::vector<double> x(n);
    for (double& v : x) v = draw();
    if (spec.domain == Domain::IntegerNonneg)
      for (double& v : x) v = std::round(v);
    // A_normalized (D x) = A x, so the witness is rescaled by the column norms.
    for (std::size_t j = 0; j < n; ++j) x[j] *= col_norm[j];
    std::vector<double> b = matvec(A, DenseVector(x)).values();
    if (spec.normalize_columns) {
      const double bn = two_norm(b);
      if (bn > 0.0) {
        for (double& v : b) v /= bn;
        for (double& v : x) v /= bn;
      }
    }
    FeasInstance inst(std::move(A), DenseVector(std::move(b)), spec.domain);
    inst.label = Label::Feasible;
    inst.witness = DenseVector(std::move(x));
    inst.provenance = Provenance{spec.dist, spec.seed};
    if (!check_witness(inst, *inst.witness, opts.tau_feas)) {
      throw GenerationError("generate: constructed witness failed verification (" +
                            describe(spec) + ")");
    }
    return inst;
  }

  constexpr int kAttempts = 100;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::vector<double> b(m);
    for (double& v : b) v = draw();
    const std::size_t flip = draw.index(m);
    b[flip] = -b[flip];
    if (spec.normalize_columns) {
      const double bn = two_norm(b);
      if (bn == 0.0) continue;
      for (double& v : b) v /= bn;
    }
    FeasInstance candidate(A, DenseVector(std::move(b)), Domain::ContinuousNonneg);
    const Verdict v = solve_lp_feasibility(candidate, opts);
    if (v.status != Status::Infeasible || !check_farkas(candidate, *v.certificate, opts.tau_feas)) {
      continue;
    }
    candidate.domain = spec.domain;
    candidate.label = Label::Infeasible;
    candidate.certificate = v.certificate;
    candidate.provenance = Provenance{spec.dist, spec.seed};
    return candidate;
  }
  throw GenerationError("generate: could not certify an infeasible instance after 100 draws of b (" +
                        describe(spec) + ")");
}

std::vector<FeasInstance> generate_suite(const GenSpec& spec, std::size_t count,
                                         const SolverOptions& opts) {
  if (count < 1) throw UsageError("generate_suite: count must be >= 1");
  std::vector<std::optional<FeasInstance>> slots(count);
  std::vector<std::string> errors(count);
  kernels::parallel::for_each_index(count, [&](std::size_t i) {
    GenSpec member = spec;
    member.seed = rng::derive_seed(spec.seed, i);
    try {
      slots[i] = generate(member, opts);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  std::vector<FeasInstance> suite;
  suite.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!slots[i]) throw GenerationError("generate_suite: member " + std::to_string(i) + ": " + errors[i]);
    for (const auto& earlier : suite) {
      if (earlier.A == slots[i]->A) {
        throw GenerationError("generate_suite: member " + std::to_string(i) + " duplicates an earlier matrix");
      }
    }
    suite.push_back(std::move(*slots[i]));
  }
  return suite;
}

}  // namespace sketchfeas
