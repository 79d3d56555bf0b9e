#include "sketchfeas/cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "sketchfeas/rng.hpp"

namespace sketchfeas {

namespace {

void require_unit(double norm, const char* what, const char* op) {
  if (std::abs(norm - 1.0) > 1e-6) {
    throw UsageError(std::string(op) + ": " + what + " must have unit norm (got " +
                     std::to_string(norm) + ")");
  }
}

double max_distance_to_generators(const DenseMatrix& A, const DenseVector& b) {
  double D = 0.0;
  for (std::size_t j = 0; j < A.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < A.rows(); ++i) {
      const double diff = b[i] - A(i, j);
      s += diff * diff;
    }
    D = std::max(D, std::sqrt(s));
  }
  return D;
}

std::vector<double> combine(const DenseMatrix& A, const std::vector<double>& lambda) {
  std::vector<double> p(A.rows(), 0.0);
  for (std::size_t j = 0; j < A.cols(); ++j) {
    if (lambda[j] == 0.0) continue;
    auto col = A.column(j);
    for (std::size_t i = 0; i < A.rows(); ++i) p[i] += lambda[j] * col[i];
  }
  return p;
}

std::vector<double> residual(const DenseVector& b, const std::vector<double>& p) {
  std::vector<double> r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = b[i] - p[i];
  return r;
}

// Least squares over the columns listed in `active`.
std::optional<std::vector<double>> solve_on(const DenseMatrix& A, const DenseVector& b,
                                            const std::vector<std::size_t>& active) {
  const std::size_t m = A.rows();
  std::vector<double> sub(m * active.size());
  for (std::size_t c = 0; c < active.size(); ++c) {
    auto col = A.column(active[c]);
    std::copy(col.begin(), col.end(), sub.begin() + static_cast<std::ptrdiff_t>(c * m));
  }
  return linalg::least_squares(m, active.size(), std::move(sub), b.values());
}

}  // namespace

SeparationCertificate scp_solve(const DenseMatrix& A, const DenseVector& b,
                                const SolverOptions& opts) {
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  if (b.size() != m) throw UsageError("scp_solve: b does not match the rows of A");
  require_unit(two_norm(b), "b", "scp_solve");
  for (std::size_t j = 0; j < n; ++j) require_unit(two_norm(A.column(j)), "every column", "scp_solve");

  // Variables: c⁺ (m) | c⁻ (m) | ε | s_b | s_1..s_n | u (m) | v (m).
  const std::size_t c_plus = 0, c_minus = m, eps_col = 2 * m, sb_col = 2 * m + 1;
  const std::size_t s_col = 2 * m + 2, u_col = s_col + n, v_col = u_col + m;
  const std::size_t cols = v_col + m;
  const std::size_t rows = 1 + n + 2 * m;
  std::vector<double> a(rows * cols, 0.0);
  std::vector<double> rhs(rows, 0.0);
  auto set = [&](std::size_t i, std::size_t j, double v) { a[j * rows + i] = v; };

  // cᵀb + ε + s_b = 0
  for (std::size_t r = 0; r < m; ++r) {
    set(0, c_plus + r, b[r]);
    set(0, c_minus + r, -b[r]);
  }
  set(0, eps_col, 1.0);
  set(0, sb_col, 1.0);
  // cᵀa_i − ε − s_i = 0
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < m; ++r) {
      set(1 + i, c_plus + r, A(r, i));
      set(1 + i, c_minus + r, -A(r, i));
    }
    set(1 + i, eps_col, -1.0);
    set(1 + i, s_col + i, -1.0);
  }
  // c⁺_r + u_r = 1, c⁻_r + v_r = 1
  for (std::size_t r = 0; r < m; ++r) {
    set(1 + n + r, c_plus + r, 1.0);
    set(1 + n + r, u_col + r, 1.0);
    rhs[1 + n + r] = 1.0;
    set(1 + n + m + r, c_minus + r, 1.0);
    set(1 + n + m + r, v_col + r, 1.0);
    rhs[1 + n + m + r] = 1.0;
  }
  std::vector<double> cost(cols, 0.0);
  cost[eps_col] = -1.0;

  const FeasInstance lp(DenseMatrix(rows, cols, std::move(a)), DenseVector(std::move(rhs)));
  const LpResult res = solve_lp(DenseVector(std::move(cost)), lp, opts);
  if (res.status != LpStatus::Optimal || -res.objective <= 1e-12) {
    throw MembershipError(
        "scp_solve: no positive separating margin; b appears to lie in cone(A), re-check "
        "feasibility with solve_lp_feasibility");
  }
  std::vector<double> c(m);
  for (std::size_t r = 0; r < m; ++r) c[r] = (*res.x)[c_plus + r] - (*res.x)[c_minus + r];
  const double cn = two_norm(c);
  for (double& v : c) v /= cn;
  double eps = -dot(c, b.view());
  for (std::size_t j = 0; j < n; ++j) eps = std::min(eps, dot(c, A.column(j)));
  if (!(eps > 0.0)) {
    throw MembershipError("scp_solve: renormalized certificate lost its margin");
  }
  return SeparationCertificate{DenseVector(std::move(c)), eps};
}

bool certificate_holds(const DenseMatrix& A, const DenseVector& b,
                       const SeparationCertificate& cert, double tol) {
  if (std::abs(two_norm(cert.c) - 1.0) > tol) return false;
  if (dot(cert.c.view(), b.view()) > -cert.eps + tol) return false;
  for (std::size_t j = 0; j < A.cols(); ++j)
    if (dot(cert.c.view(), A.column(j)) < cert.eps - tol) return false;
  return true;
}

ConeDistanceReport project_onto_cone(const DenseMatrix& A, const DenseVector& b,
                                     std::size_t max_outer) {
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  if (b.size() != m) throw UsageError("project_onto_cone: b does not match the rows of A");
  const std::size_t cap = max_outer != 0 ? max_outer : 3 * n;

  double col_max = 0.0;
  for (std::size_t j = 0; j < n; ++j) col_max = std::max(col_max, two_norm(A.column(j)));
  const double w_tol = 1e-13 * (1.0 + two_norm(b)) * std::max(col_max, 1.0);

  std::vector<double> x(n, 0.0);
  std::vector<char> passive(n, 0);
  std::vector<char> excluded(n, 0);
  std::size_t outer = 0;

  auto gradient = [&] {
    const auto r = residual(b, combine(A, x));
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = dot(A.column(j), r);
    return w;
  };

  for (;;) {
    const auto w = gradient();
    std::size_t t = n;
    double best = w_tol;
    for (std::size_t j = 0; j < n; ++j) {
      if (passive[j] || excluded[j]) continue;
      if (w[j] > best) {
        best = w[j];
        t = j;
      }
    }
    if (t == n) break;
    if (outer == cap) {
      throw ConeConvergenceError("project_onto_cone: active-set cap of " + std::to_string(cap) +
                                     " iterations exceeded",
                                 DenseVector(x));
    }
    ++outer;
    passive[t] = 1;

    bool first = true;
    for (std::size_t inner = 0; inner <= n; ++inner) {
      std::vector<std::size_t> active;
      for (std::size_t j = 0; j < n; ++j)
        if (passive[j]) active.push_back(j);
      const auto z = solve_on(A, b, active);
      std::size_t t_pos = 0;
      while (active[t_pos] != t && t_pos + 1 < active.size()) ++t_pos;
      if (!z || (first && active[t_pos] == t && (*z)[t_pos] <= 0.0)) {
        // Dependent column or a rounding-level gradient: drop t until x moves.
        passive[t] = 0;
        excluded[t] = 1;
        break;
      }
      first = false;
      bool all_positive = true;
      for (double v : *z) all_positive &= v > 0.0;
      if (all_positive) {
        for (std::size_t c = 0; c < active.size(); ++c) x[active[c]] = (*z)[c];
        std::fill(excluded.begin(), excluded.end(), 0);
        break;
      }
      double alpha = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < active.size(); ++c) {
        if ((*z)[c] > 0.0) continue;
        const double xj = x[active[c]];
        alpha = std::min(alpha, xj / (xj - (*z)[c]));
      }
      for (std::size_t c = 0; c < active.size(); ++c) {
        const std::size_t j = active[c];
        x[j] += alpha * ((*z)[c] - x[j]);
        if (x[j] <= 1e-15 * (1.0 + std::abs((*z)[c]))) {
          x[j] = 0.0;
          passive[j] = 0;
        }
      }
      std::fill(excluded.begin(), excluded.end(), 0);
    }
  }

  auto p = combine(A, x);
  const auto r = residual(b, p);
  double kkt = 0.0;
  for (std::size_t j = 0; j < n; ++j) kkt = std::max(kkt, dot(r, A.column(j)));
  const double bn = two_norm(b);
  kkt = std::max(kkt, std::abs(dot(r, p)) / (1.0 + bn * bn));
  const double d = two_norm(r);
  return ConeDistanceReport{DenseVector(std::move(p)), d, max_distance_to_generators(A, b),
                            DenseVector(std::move(x)), outer, kkt};
}

ConeDistanceReport dist_to_convhull(const DenseMatrix& A, const DenseVector& b,
                                    std::size_t max_iters) {
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  if (b.size() != m) throw UsageError("dist_to_convhull: b does not match the rows of A");
  const std::size_t cap = max_iters != 0 ? max_iters : 10 * (n + m) + 100;

  // Shifted points q_i = a_i − b; the answer is the min-norm point of conv(q).
  std::vector<double> q(m * n);
  double scale = 0.0;
  std::size_t start = 0;
  double start_norm = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      q[j * m + i] = A(i, j) - b[i];
      s += q[j * m + i] * q[j * m + i];
    }
    scale = std::max(scale, s);
    if (s < start_norm) {
      start_norm = s;
      start = j;
    }
  }
  auto qcol = [&](std::size_t j) { return std::span<const double>(q.data() + j * m, m); };

  std::vector<std::size_t> corral{start};
  std::vector<double> weights{1.0};
  std::vector<double> x(qcol(start).begin(), qcol(start).end());
  const double tol = 1e-12 * std::max(scale, 1e-300);

  auto recompute_x = [&] {
    std::fill(x.begin(), x.end(), 0.0);
    for (std::size_t c = 0; c < corral.size(); ++c) {
      auto col = qcol(corral[c]);
      for (std::size_t i = 0; i < m; ++i) x[i] += weights[c] * col[i];
    }
  };
  auto best_lambda = [&] {
    std::vector<double> lambda(n, 0.0);
    for (std::size_t c = 0; c < corral.size(); ++c) lambda[corral[c]] = weights[c];
    return DenseVector(std::move(lambda));
  };

  std::size_t iters = 0;
  bool stalled = false;
  while (!stalled) {
    if (++iters > cap) {
      throw ConeConvergenceError("dist_to_convhull: iteration cap of " + std::to_string(cap) +
                                     " exceeded",
                                 best_lambda());
    }
    const double xx = dot(x, x);
    std::size_t j = 0;
    double jmin = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < n; ++c) {
      const double v = dot(qcol(c), x);
      if (v < jmin) {
        jmin = v;
        j = c;
      }
    }
    if (xx - jmin <= tol) break;
    if (std::find(corral.begin(), corral.end(), j) != corral.end()) break;
    corral.push_back(j);
    weights.push_back(0.0);

    for (;;) {
      // Affine minimizer over the corral: x = q_0 + Σ β_k (q_k − q_0).
      std::vector<double> alpha(corral.size(), 0.0);
      const std::size_t extra = corral.size() - 1;
      std::vector<double> diffs(m * extra);
      std::vector<double> target(m);
      auto q0 = qcol(corral[0]);
      for (std::size_t i = 0; i < m; ++i) target[i] = -q0[i];
      for (std::size_t k = 0; k < extra; ++k) {
        auto qk = qcol(corral[k + 1]);
        for (std::size_t i = 0; i < m; ++i) diffs[k * m + i] = qk[i] - q0[i];
      }
      auto beta = linalg::least_squares(m, extra, std::move(diffs), std::move(target));
      if (!beta) {
        // Affinely dependent corral: drop the newest point and stop here.
        corral.pop_back();
        weights.pop_back();
        stalled = true;
        break;
      }
      double sum = 0.0;
      for (std::size_t k = 0; k < extra; ++k) {
        alpha[k + 1] = (*beta)[k];
        sum += (*beta)[k];
      }
      alpha[0] = 1.0 - sum;

      bool interior = true;
      for (double a : alpha) interior &= a > 1e-14;
      if (interior) {
        weights = alpha;
        break;
      }
      double theta = 1.0;
      for (std::size_t c = 0; c < corral.size(); ++c) {
        if (alpha[c] > 1e-14) continue;
        const double denom = weights[c] - alpha[c];
        if (denom > 0.0) theta = std::min(theta, weights[c] / denom);
      }
      for (std::size_t c = 0; c < corral.size(); ++c)
        weights[c] = (1.0 - theta) * weights[c] + theta * alpha[c];
      std::size_t keep = 0;
      double total = 0.0;
      for (std::size_t c = 0; c < corral.size(); ++c) {
        if (weights[c] > 1e-14) {
          corral[keep] = corral[c];
          weights[keep] = weights[c];
          total += weights[c];
          ++keep;
        }
      }
      if (keep == 0) {
        // Cannot happen in exact arithmetic; keep the best single point.
        corral.assign(1, corral[0]);
        weights.assign(1, 1.0);
        break;
      }
      corral.resize(keep);
      weights.resize(keep);
      for (double& w : weights) w /= total;
    }
    recompute_x();
  }
  auto lambda = best_lambda();
  auto p = combine(A, lambda.values());
  const auto r = residual(b, p);
  // Optimality over the hull: (a_i − p)ᵀ(b − p) <= 0 for every vertex.
  double kkt = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += (A(i, c) - p[i]) * r[i];
    kkt = std::max(kkt, s);
  }
  const double d = two_norm(r);
  return ConeDistanceReport{DenseVector(std::move(p)), d, max_distance_to_generators(A, b),
                            std::move(lambda), iters, kkt};
}

ANormReport a_norm(const DenseMatrix& A, const DenseVector& x, const SolverOptions& opts) {
  const FeasInstance inst(A, x);
  const Verdict membership = solve_lp_feasibility(inst, opts);
  if (membership.status != Status::Feasible) {
    throw MembershipError("a_norm: x is not in cone(A); the A-norm is undefined there");
  }
  const LpResult r = solve_lp(DenseVector(std::vector<double>(A.cols(), 1.0)), inst, opts);
  if (r.status != LpStatus::Optimal) {
    throw MembershipError("a_norm: minimal representation LP ended " + to_string(r.status));
  }
  return ANormReport{r.objective, *r.x};
}

double mu_a_lower_bound(const DenseMatrix& A, std::size_t samples, std::uint64_t seed,
                        const SolverOptions& opts) {
  if (samples < 1) throw UsageError("mu_a_lower_bound: samples must be >= 1");
  double best = 1.0;
  for (std::size_t j = 0; j < A.cols(); ++j) {
    const DenseVector a = A.column_vector(j);
    const double norm = two_norm(a);
    if (norm == 0.0) continue;
    best = std::max(best, a_norm(A, scale(a, 1.0 / norm), opts).value);
  }
  for (std::size_t s = 0; s < samples; ++s) {
    rng::SplitMix64 gen(rng::derive_seed(seed, s));
    std::vector<double> lambda(A.cols());
    for (double& l : lambda) l = -std::log(gen.uniform());
    auto x = combine(A, lambda);
    const double norm = two_norm(x);
    if (norm == 0.0) continue;
    for (double& v : x) v /= norm;
    best = std::max(best, a_norm(A, DenseVector(std::move(x)), opts).value);
  }
  return best;
}

double claim_inequality_slack(const DenseVector& b, const DenseVector& x, double p_norm) {
  const double alpha = two_norm(x);
  const double lhs = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) s += (b[i] - x[i]) * (b[i] - x[i]);
    return s;
  }();
  return lhs - (alpha * alpha - 2.0 * alpha * p_norm + 1.0);
}

bool claim_inequality_check(const DenseMatrix& A, const DenseVector& b, const DenseVector& x,
                            double slack) {
  if (std::abs(two_norm(b) - 1.0) > 1e-9) {
    throw UsageError("claim_inequality_check: b must have unit norm");
  }
  if (x.size() != b.size()) throw UsageError("claim_inequality_check: x and b differ in size");
  const ConeDistanceReport proj = project_onto_cone(A, b);
  return claim_inequality_slack(b, x, two_norm(proj.p)) >= -slack;
}

}  // namespace sketchfeas
