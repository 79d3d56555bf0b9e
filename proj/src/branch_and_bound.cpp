#include <algorithm>
#include <cmath>
#include <vector>

#include "sketchfeas/error.hpp"
#include "sketchfeas/solver.hpp"

namespace sketchfeas {

namespace {

struct Node {
  std::vector<double> lower;
  std::vector<double> upper;
};

FeasInstance relaxation(const FeasInstance& inst) {
  return FeasInstance(inst.A, inst.b, Domain::ContinuousNonneg);
}

// Shifts x = l + x' and appends x'_j + s_j = u_j − l_j, giving an equality
// system over (x', s) >= 0.
FeasInstance bounded_relaxation(const FeasInstance& inst, const Node& node) {
  const std::size_t m = inst.rows();
  const std::size_t n = inst.cols();
  const std::size_t rows = m + n;
  const std::size_t cols = 2 * n;
  std::vector<double> a(rows * cols, 0.0);
  std::vector<double> rhs(rows, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) a[j * rows + i] = inst.A(i, j);
    a[j * rows + m + j] = 1.0;
    a[(n + j) * rows + m + j] = 1.0;
  }
  for (std::size_t i = 0; i < m; ++i) {
    double s = inst.b[i];
    for (std::size_t j = 0; j < n; ++j) s -= inst.A(i, j) * node.lower[j];
    rhs[i] = s;
  }
  for (std::size_t j = 0; j < n; ++j) rhs[m + j] = node.upper[j] - node.lower[j];
  return FeasInstance(DenseMatrix(rows, cols, std::move(a)), DenseVector(std::move(rhs)));
}

}  // namespace

Verdict solve_ip_feasibility(const FeasInstance& inst, const SolverOptions& opts) {
  const std::size_t n = inst.cols();
  const FeasInstance relaxed = relaxation(inst);

  Verdict root = solve_lp_feasibility(relaxed, opts);
  if (root.status == Status::Infeasible) {
    root.iterations = 1;
    root.note = "LP relaxation infeasible";
    return root;
  }

  // Per-variable upper bounds from max x_j over the relaxation.
  Node start{std::vector<double>(n, 0.0), std::vector<double>(n, opts.bnb_bound_cap)};
  bool capped = false;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> c(n, 0.0);
    c[j] = -1.0;
    const LpResult r = solve_lp(DenseVector(std::move(c)), relaxed, opts);
    if (r.status == LpStatus::Unbounded) {
      capped = true;
      continue;
    }
    const double max_xj = -r.objective;
    if (max_xj > opts.bnb_bound_cap) {
      capped = true;
    } else {
      start.upper[j] = std::floor(max_xj + 1e-6);
    }
  }

  std::vector<Node> stack;
  stack.push_back(std::move(start));
  std::size_t nodes = 0;
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    if (++nodes > opts.bnb_node_cap) {
      Verdict v;
      v.status = Status::Unknown;
      v.iterations = nodes - 1;
      v.note = "node cap of " + std::to_string(opts.bnb_node_cap) + " reached";
      return v;
    }
    bool empty_box = false;
    for (std::size_t j = 0; j < n; ++j) empty_box |= node.lower[j] > node.upper[j];
    if (empty_box) continue;

    const Verdict lp = solve_lp_feasibility(bounded_relaxation(inst, node), opts);
    if (lp.status != Status::Feasible) continue;

    std::vector<double> x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = node.lower[j] + (*lp.witness)[j];

    std::vector<double> rounded(n);
    for (std::size_t j = 0; j < n; ++j) rounded[j] = std::max(std::round(x[j]), 0.0);
    DenseVector candidate(rounded);
    if (check_witness(inst, candidate, opts.tau_feas)) {
      Verdict v;
      v.status = Status::Feasible;
      v.witness = std::move(candidate);
      v.iterations = nodes;
      return v;
    }

    // Most fractional coordinate, lowest index on ties; only coordinates the
    // node has not already fixed are eligible.
    std::size_t branch = n;
    double worst = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (node.lower[j] >= node.upper[j]) continue;
      const double frac = std::abs(x[j] - std::round(x[j]));
      if (frac > worst) {
        worst = frac;
        branch = j;
      }
    }
    if (branch == n) continue;

    const double value = x[branch];
    double down = std::floor(value);
    double up = down + 1.0;
    if (worst <= 1e-9) {
      // Integral but the rounded point missed; split at the value itself.
      down = std::round(value);
      up = down + 1.0;
      if (down >= node.upper[branch]) {
        down = node.upper[branch] - 1.0;
        up = node.upper[branch];
      }
    }
    Node up_child = node;
    up_child.lower[branch] = std::max(up_child.lower[branch], up);
    Node down_child = std::move(node);
    down_child.upper[branch] = std::min(down_child.upper[branch], down);
    stack.push_back(std::move(up_child));
    stack.push_back(std::move(down_child));
  }

  Verdict v;
  v.iterations = nodes;
  if (capped) {
    v.status = Status::Unknown;
    v.note = "tree exhausted but a variable bound was capped at " +
             std::to_string(opts.bnb_bound_cap);
  } else {
    v.status = Status::Infeasible;
    v.note = "branch-and-bound tree exhausted";
  }
  return v;
}

}  // namespace sketchfeas
