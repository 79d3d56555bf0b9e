#include "sketchfeas/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sketchfeas/error.hpp"

namespace sketchfeas {

namespace {

void require_eps(double eps, const char* op) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw UsageError(std::string(op) + ": eps must lie in (0,1), got " + std::to_string(eps));
  }
}

void require_C(double C, const char* op) {
  if (!(C > 0.0)) throw UsageError(std::string(op) + ": C must be positive");
}

void require_k(double k, const char* op) {
  if (!(k >= 0.0) || !std::isfinite(k)) throw UsageError(std::string(op) + ": k must be >= 0");
}

BoundReport make_report(BoundKind kind, std::map<std::string, double> inputs, double factor,
                        double exponent, std::string note = {}) {
  const double raw = 1.0 - factor * std::exp(-exponent);
  return BoundReport{kind, std::move(inputs), std::clamp(raw, 0.0, 1.0), raw, std::move(note)};
}

}  // namespace

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::PairDistortion: return "pair";
    case BoundKind::RlmFinite: return "rlm";
    case BoundKind::PointedCone: return "pointed";
    case BoundKind::ConvHull: return "hull";
    case BoundKind::ConeThm2: return "cone";
  }
  return "unknown";
}

BoundReport pair_distortion_bound(std::size_t points, double eps, double k, double C) {
  require_eps(eps, "pair_distortion_bound");
  require_C(C, "pair_distortion_bound");
  require_k(k, "pair_distortion_bound");
  const double p = static_cast<double>(points);
  return make_report(BoundKind::PairDistortion, {{"points", p}, {"eps", eps}, {"k", k}, {"C", C}},
                     p * (p - 1.0), C * eps * eps * k);
}

BoundReport rlm_finite_bound(std::size_t card_X, double k, double C) {
  require_C(C, "rlm_finite_bound");
  require_k(k, "rlm_finite_bound");
  const double card = static_cast<double>(card_X);
  return make_report(BoundKind::RlmFinite, {{"card_X", card}, {"k", k}, {"C", C}}, 2.0 * card,
                     C * k);
}

BoundReport pointed_cone_bound(std::size_t n, double eps, double k, double C) {
  require_eps(eps, "pointed_cone_bound");
  require_C(C, "pointed_cone_bound");
  require_k(k, "pointed_cone_bound");
  const double nn = static_cast<double>(n);
  return make_report(BoundKind::PointedCone, {{"n", nn}, {"eps", eps}, {"k", k}, {"C", C}},
                     4.0 * (nn + 1.0), C * (eps * eps - eps * eps * eps) * k);
}

BoundReport convhull_bound(std::size_t n, double eps, double k, double C) {
  require_eps(eps, "convhull_bound");
  require_C(C, "convhull_bound");
  require_k(k, "convhull_bound");
  const double nn = static_cast<double>(n);
  return make_report(BoundKind::ConvHull, {{"n", nn}, {"eps", eps}, {"k", k}, {"C", C}},
                     2.0 * nn * nn, C * (eps * eps - eps * eps * eps) * k,
                     "valid only when eps < d^2/D^2 for the instance");
}

BoundReport cone_thm2_bound(std::size_t n, double eps, double k, double C) {
  require_eps(eps, "cone_thm2_bound");
  require_C(C, "cone_thm2_bound");
  require_k(k, "cone_thm2_bound");
  const double nn = static_cast<double>(n);
  return make_report(BoundKind::ConeThm2, {{"n", nn}, {"eps", eps}, {"k", k}, {"C", C}},
                     2.0 * nn * (nn + 1.0), C * (eps * eps - eps * eps * eps) * k);
}

double eps_threshold_thm2(double d, double p_norm, double mu_A) {
  if (!(mu_A >= 1.0)) throw UsageError("eps_threshold_thm2: mu_A must be >= 1");
  if (!(d > 0.0 && d <= 1.0)) throw UsageError("eps_threshold_thm2: d must lie in (0,1]");
  if (!(p_norm >= 0.0)) throw UsageError("eps_threshold_thm2: p_norm must be >= 0");
  if (p_norm > 0.0 && std::abs(d * d - (1.0 - p_norm * p_norm)) > 1e-9) {
    throw UsageError("eps_threshold_thm2: inputs violate d^2 = 1 - |p|^2 for unit b");
  }
  return d * d / (mu_A * mu_A + 2.0 * p_norm * mu_A + 1.0);
}

std::pair<std::uint64_t, std::uint64_t> restricted_cardinality_bound(const DenseVector& alpha,
                                                                     double d) {
  if (alpha.empty()) throw UsageError("restricted_cardinality_bound: alpha is empty");
  std::uint64_t dbar = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (!(alpha[i] > 0.0)) {
      throw UsageError("restricted_cardinality_bound: alpha[" + std::to_string(i) +
                       "] must be positive");
    }
    const double q = std::floor(d / alpha[i]);
    if (q > 0.0) {
      dbar = std::max<std::uint64_t>(
          dbar, q >= 1.8e19 ? std::numeric_limits<std::uint64_t>::max()
                            : static_cast<std::uint64_t>(q));
    }
  }
  const std::uint64_t n = alpha.size();
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t power = 1;
  for (std::uint64_t e = 0; e < dbar; ++e) {
    if (n != 0 && power > kMax / n) return {dbar, kMax};
    power *= n;
    if (n <= 1) break;
  }
  return {dbar, power};
}

}  // namespace sketchfeas
