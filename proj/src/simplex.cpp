// Dense tableau simplex. Rows are flipped so b >= 0, an identity block of
// artificial columns supplies the starting basis, and the artificial columns
// stay in the tableau for the whole solve so that the duals (and hence a
// Farkas certificate) can be read off their reduced costs.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sketchfeas/error.hpp"
#include "sketchfeas/solver.hpp"

namespace sketchfeas {

std::string to_string(Status s) {
  switch (s) {
    case Status::Feasible: return "Feasible";
    case Status::Infeasible: return "Infeasible";
    case Status::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
  }
  return "Unknown";
}

namespace {

class Tableau {
 public:
  Tableau(const FeasInstance& inst, const SolverOptions& opts)
      : m_(inst.rows()),
        n_(inst.cols()),
        width_(n_ + m_ + 1),
        tol_(opts.tau_pivot),
        limit_(opts.iteration_limit(m_, n_)),
        stall_limit_(2 * (m_ + n_)),
        cells_((m_ + 1) * width_, 0.0),
        basis_(m_),
        sign_(m_, 1.0) {
    for (std::size_t i = 0; i < m_; ++i) {
      sign_[i] = inst.b[i] < 0.0 ? -1.0 : 1.0;
      double* row = row_ptr(i);
      for (std::size_t j = 0; j < n_; ++j) row[j] = sign_[i] * inst.A(i, j);
      row[n_ + i] = 1.0;
      row[rhs()] = sign_[i] * inst.b[i];
      basis_[i] = n_ + i;
    }
  }

  std::size_t m() const noexcept { return m_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t rhs() const noexcept { return width_ - 1; }
  std::size_t iterations() const noexcept { return iterations_; }
  const std::vector<std::size_t>& basis() const noexcept { return basis_; }
  double sign(std::size_t i) const noexcept { return sign_[i]; }

  double* row_ptr(std::size_t i) noexcept { return cells_.data() + i * width_; }
  const double* row_ptr(std::size_t i) const noexcept { return cells_.data() + i * width_; }
  double at(std::size_t i, std::size_t j) const noexcept { return cells_[i * width_ + j]; }
  double reduced_cost(std::size_t j) const noexcept { return at(m_, j); }

  // Installs costs for all n + m columns and prices out the current basis.
  void set_costs(const std::vector<double>& costs) {
    double* obj = row_ptr(m_);
    for (std::size_t j = 0; j < width_ - 1; ++j) obj[j] = costs[j];
    obj[rhs()] = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = costs[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = row_ptr(i);
      for (std::size_t j = 0; j < width_; ++j) obj[j] -= cb * row[j];
    }
  }

  enum class Outcome { Optimal, Unbounded };

  // Runs simplex iterations on columns [0, allowed_cols). On Unbounded,
  // `unbounded_col` names the entering column with no blocking row.
  Outcome run(std::size_t allowed_cols, std::size_t& unbounded_col) {
    std::vector<char> is_basic(width_ - 1, 0);
    for (std::size_t b : basis_) is_basic[b] = 1;
    std::size_t stalled = 0;
    bool bland = false;
    for (;;) {
      const double* obj = row_ptr(m_);
      std::size_t q = width_;
      double best = -tol_;
      for (std::size_t j = 0; j < allowed_cols; ++j) {
        if (is_basic[j]) continue;
        if (obj[j] < best) {
          q = j;
          if (bland) break;
          best = obj[j];
        }
      }
      if (q == width_) return Outcome::Optimal;

      std::size_t r = m_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double piv = at(i, q);
        if (piv <= tol_) continue;
        const double ratio = std::max(at(i, rhs()), 0.0) / piv;
        if (r == m_ || ratio < best_ratio - 1e-12 * (1.0 + best_ratio)) {
          r = i;
          best_ratio = ratio;
        } else if (ratio <= best_ratio + 1e-12 * (1.0 + best_ratio)) {
          const bool take = bland ? basis_[i] < basis_[r] : piv > at(r, q);
          if (take) {
            r = i;
            best_ratio = std::min(best_ratio, ratio);
          }
        }
      }
      if (r == m_) {
        unbounded_col = q;
        return Outcome::Unbounded;
      }

      if (iterations_ >= limit_) {
        throw IterationLimitError("simplex: iteration limit of " + std::to_string(limit_) +
                                      " exceeded",
                                  iterations_);
      }
      if (best_ratio <= 1e-12) {
        if (++stalled >= stall_limit_) bland = true;
      } else {
        stalled = 0;
      }
      is_basic[basis_[r]] = 0;
      is_basic[q] = 1;
      pivot(r, q);
    }
  }

  void pivot(std::size_t r, std::size_t q) {
    ++iterations_;
    double* prow = row_ptr(r);
    const double inv = 1.0 / prow[q];
    for (std::size_t j = 0; j < width_; ++j) prow[j] *= inv;
    prow[q] = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      double* row = row_ptr(i);
      const double f = row[q];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) row[j] -= f * prow[j];
      row[q] = 0.0;
    }
    for (std::size_t i = 0; i < m_; ++i) {
      double& v = row_ptr(i)[rhs()];
      if (v < 0.0 && v > -1e-11) v = 0.0;
    }
    basis_[r] = q;
  }

  // Pivots basic artificials out on any usable structural entry. Artificials
  // left behind sit in rows that are zero over the structural columns.
  void evict_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      std::vector<char> is_basic(n_, 0);
      for (std::size_t b : basis_)
        if (b < n_) is_basic[b] = 1;
      std::size_t best = n_;
      double best_abs = tol_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (is_basic[j]) continue;
        const double a = std::abs(at(i, j));
        if (a > best_abs) {
          best_abs = a;
          best = j;
        }
      }
      if (best != n_) pivot(i, best);
    }
  }

  std::vector<double> primal() const {
    std::vector<double> x(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = std::max(at(i, rhs()), 0.0);
    return x;
  }

  double artificial_mass() const {
    double w = 0.0;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= n_) w += std::max(at(i, rhs()), 0.0);
    return w;
  }

 private:
  std::size_t m_;
  std::size_t n_;
  std::size_t width_;
  double tol_;
  std::size_t limit_;
  std::size_t stall_limit_;
  std::vector<double> cells_;
  std::vector<std::size_t> basis_;
  std::vector<double> sign_;
  std::size_t iterations_ = 0;
};

double residual_norm(const FeasInstance& inst, const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < inst.rows(); ++i) {
    double r = -inst.b[i];
    for (std::size_t j = 0; j < inst.cols(); ++j) r += inst.A(i, j) * x[j];
    s += r * r;
  }
  return std::sqrt(s);
}

// Recomputes the basic solution from the original data, B x_B = b, which is
// more accurate than the tableau column after many pivots.
std::optional<std::vector<double>> refine_basic_solution(const FeasInstance& inst,
                                                         const Tableau& tab) {
  const std::size_t m = inst.rows();
  const std::size_t n = inst.cols();
  std::vector<double> basis_matrix(m * m, 0.0);
  for (std::size_t c = 0; c < m; ++c) {
    const std::size_t col = tab.basis()[c];
    if (col < n) {
      for (std::size_t i = 0; i < m; ++i) basis_matrix[c * m + i] = inst.A(i, col);
    } else {
      basis_matrix[c * m + (col - n)] = tab.sign(col - n);
    }
  }
  auto xb = linalg::solve_square(m, std::move(basis_matrix), inst.b.values());
  if (!xb) return std::nullopt;
  std::vector<double> x(n, 0.0);
  for (std::size_t c = 0; c < m; ++c)
    if (tab.basis()[c] < n) x[tab.basis()[c]] = std::max((*xb)[c], 0.0);
  return x;
}

std::vector<double> best_primal(const FeasInstance& inst, const Tableau& tab, double tau) {
  auto x = tab.primal();
  const double scale = 1.0 + two_norm(inst.b);
  const double res = residual_norm(inst, x);
  if (res <= 0.1 * tau * scale) return x;
  if (auto refined = refine_basic_solution(inst, tab)) {
    if (residual_norm(inst, *refined) < res) return *refined;
  }
  return x;
}

// y_r = sign_r · (1 − d_{n+r}) with phase-I costs of 1 on artificials.
std::vector<double> farkas_from_phase_one(const Tableau& tab) {
  std::vector<double> y(tab.m());
  for (std::size_t r = 0; r < tab.m(); ++r)
    y[r] = tab.sign(r) * (1.0 - tab.reduced_cost(tab.n() + r));
  return y;
}

struct PhaseOne {
  bool feasible;
  std::vector<double> certificate;
};

PhaseOne run_phase_one(Tableau& tab, const FeasInstance& inst, const SolverOptions& opts) {
  std::vector<double> costs(tab.n() + tab.m(), 0.0);
  for (std::size_t r = 0; r < tab.m(); ++r) costs[tab.n() + r] = 1.0;
  tab.set_costs(costs);
  std::size_t unused = 0;
  // Phase I is bounded below by zero, so it always ends Optimal.
  tab.run(tab.n() + tab.m(), unused);
  const double threshold = opts.tau_feas * (1.0 + two_norm(inst.b));
  if (tab.artificial_mass() <= threshold) return {true, {}};
  return {false, farkas_from_phase_one(tab)};
}

void require_continuous(const FeasInstance& inst, const char* op) {
  if (inst.domain != Domain::ContinuousNonneg) {
    throw UsageError(std::string(op) + ": instance domain must be continuous (lp)");
  }
}

}  // namespace

Verdict solve_lp_feasibility(const FeasInstance& inst, const SolverOptions& opts) {
  require_continuous(inst, "solve_lp_feasibility");
  Tableau tab(inst, opts);
  const PhaseOne p1 = run_phase_one(tab, inst, opts);
  Verdict v;
  v.iterations = tab.iterations();
  if (p1.feasible) {
    v.status = Status::Feasible;
    v.witness = DenseVector(best_primal(inst, tab, opts.tau_feas));
  } else {
    v.status = Status::Infeasible;
    v.certificate = DenseVector(p1.certificate);
  }
  return v;
}

LpResult solve_lp(const DenseVector& c, const FeasInstance& inst, const SolverOptions& opts) {
  require_continuous(inst, "solve_lp");
  if (c.size() != inst.cols()) {
    throw UsageError("solve_lp: cost has " + std::to_string(c.size()) + " entries, expected " +
                     std::to_string(inst.cols()));
  }
  Tableau tab(inst, opts);
  const PhaseOne p1 = run_phase_one(tab, inst, opts);
  LpResult result;
  if (!p1.feasible) {
    result.status = LpStatus::Infeasible;
    result.certificate = DenseVector(p1.certificate);
    result.iterations = tab.iterations();
    return result;
  }

  tab.evict_artificials();
  std::vector<double> costs(tab.n() + tab.m(), 0.0);
  for (std::size_t j = 0; j < tab.n(); ++j) costs[j] = c[j];
  tab.set_costs(costs);
  std::size_t entering = 0;
  const auto outcome = tab.run(tab.n(), entering);
  result.iterations = tab.iterations();

  if (outcome == Tableau::Outcome::Unbounded) {
    std::vector<double> ray(tab.n(), 0.0);
    ray[entering] = 1.0;
    for (std::size_t i = 0; i < tab.m(); ++i) {
      const std::size_t b = tab.basis()[i];
      if (b < tab.n()) ray[b] = std::max(-tab.at(i, entering), 0.0);
    }
    result.status = LpStatus::Unbounded;
    result.ray = DenseVector(std::move(ray));
    return result;
  }

  auto x = best_primal(inst, tab, opts.tau_feas);
  result.status = LpStatus::Optimal;
  result.objective = dot(c.view(), x);
  result.x = DenseVector(std::move(x));
  return result;
}

Verdict solve(const FeasInstance& inst, const SolverOptions& opts) {
  return inst.domain == Domain::IntegerNonneg ? solve_ip_feasibility(inst, opts)
                                              : solve_lp_feasibility(inst, opts);
}

bool check_witness(const FeasInstance& inst, const DenseVector& x, double tau) {
  if (x.size() != inst.cols()) return false;
  for (double v : x)
    if (v < -tau) return false;
  if (inst.domain == Domain::IntegerNonneg) {
    for (double v : x)
      if (std::abs(v - std::round(v)) > tau) return false;
  }
  return residual_norm(inst, x.values()) <= tau * (1.0 + two_norm(inst.b));
}

bool check_farkas(const FeasInstance& inst, const DenseVector& y, double tau) {
  if (y.size() != inst.rows()) return false;
  for (std::size_t j = 0; j < inst.cols(); ++j) {
    if (dot(y.view(), inst.A.column(j)) > tau * two_norm(inst.A.column(j))) return false;
  }
  const double margin = dot(y.view(), inst.b.view());
  return margin > 0.0 && margin >= tau * two_norm(inst.b);
}

}  // namespace sketchfeas
