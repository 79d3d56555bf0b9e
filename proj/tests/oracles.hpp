#pragma once

// Reference computations written without the library's linear algebra, used
// as ground truth by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "sketchfeas/numerics.hpp"

namespace oracle {

using Rows = std::vector<std::vector<double>>;

inline std::vector<double> naive_matvec(const Rows& m, const std::vector<double>& v) {
  std::vector<double> out(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

inline Rows to_rows(const sketchfeas::DenseMatrix& a) {
  Rows r(a.rows(), std::vector<double>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r[i][j] = a(i, j);
  return r;
}

// Gauss-Jordan with full pivoting on a small square system.
inline std::optional<std::vector<double>> gauss_solve(Rows a, std::vector<double> b) {
  const std::size_t n = b.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t j = 0; j < n; ++j) perm[j] = j;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pr = c, pc = c;
    for (std::size_t i = c; i < n; ++i)
      for (std::size_t j = c; j < n; ++j)
        if (std::abs(a[i][j]) > std::abs(a[pr][pc])) pr = i, pc = j;
    if (std::abs(a[pr][pc]) < 1e-10) return std::nullopt;
    std::swap(a[c], a[pr]);
    std::swap(b[c], b[pr]);
    for (auto& row : a) std::swap(row[c], row[pc]);
    std::swap(perm[c], perm[pc]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      const double f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
      b[i] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[perm[i]] = b[i] / a[i][i];
  return x;
}

// Ax = b, x >= 0 is feasible iff some basis of A has a nonnegative basic
// solution (A of full row rank). Enumerates all m-subsets of columns.
inline bool basis_enumeration_feasible(const Rows& a, const std::vector<double>& b,
                                       double tol = 1e-9) {
  const std::size_t m = a.size(), n = a[0].size();
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(m), true);
  do {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < n; ++j)
      if (pick[j]) cols.push_back(j);
    Rows basis(m, std::vector<double>(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t c = 0; c < m; ++c) basis[i][c] = a[i][cols[c]];
    if (auto x = gauss_solve(basis, b)) {
      if (*std::min_element(x->begin(), x->end()) >= -tol) return true;
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return false;
}

// Exhaustive search over x in {0..cap}^n for Ax = b with integer data,
// pruning on partial row sums (entries of A are positive).
inline bool integer_enumeration_feasible(const std::vector<std::vector<long>>& a,
                                         const std::vector<long>& b, long cap) {
  const std::size_t m = a.size(), n = a[0].size();
  std::function<bool(std::size_t, std::vector<long>)> search =
      [&](std::size_t j, std::vector<long> rest) -> bool {
    if (j == n) return std::all_of(rest.begin(), rest.end(), [](long r) { return r == 0; });
    for (long v = 0; v <= cap; ++v) {
      if (std::any_of(rest.begin(), rest.end(), [](long r) { return r < 0; })) return false;
      if (search(j + 1, rest)) return true;
      for (std::size_t i = 0; i < m; ++i) rest[i] -= a[i][j];
    }
    return false;
  };
  return search(0, b);
}

inline std::vector<double> random_vector(std::mt19937_64& gen, std::size_t n, double lo,
                                         double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(gen);
  return v;
}

inline sketchfeas::DenseMatrix random_matrix(std::mt19937_64& gen, std::size_t m, std::size_t n,
                                             double lo, double hi) {
  return sketchfeas::DenseMatrix(m, n, random_vector(gen, m * n, lo, hi));
}

// 5x8 continuous instances with mixed-sign data; roughly half feasible.
struct LpCase {
  Rows a;
  std::vector<double> b;
};

inline LpCase random_lp_case(std::mt19937_64& gen, std::size_t m = 5, std::size_t n = 8) {
  LpCase c{Rows(m, std::vector<double>(n)), random_vector(gen, m, -1, 1)};
  std::uniform_real_distribution<double> u(-1, 1);
  for (auto& row : c.a)
    for (double& v : row) v = u(gen);
  return c;
}

inline sketchfeas::DenseMatrix rows_to_matrix(const Rows& r) {
  std::vector<double> flat;
  for (const auto& row : r) flat.insert(flat.end(), row.begin(), row.end());
  return sketchfeas::DenseMatrix::from_row_major(r.size(), r[0].size(), flat);
}

// 3x5 integer instances, entries of A in {1..9} and b in {0..20}^3, so every
// solution lies in {0..20}^5. Half are built from a small nonnegative x.
struct IpCase {
  std::vector<std::vector<long>> a;
  std::vector<long> b;
};

inline IpCase random_ip_case(std::mt19937_64& gen, bool planted) {
  std::uniform_int_distribution<long> entry(1, 9), rhs(0, 20), small(0, 2);
  for (;;) {
    IpCase c{std::vector<std::vector<long>>(3, std::vector<long>(5)), std::vector<long>(3)};
    for (auto& row : c.a)
      for (long& v : row) v = entry(gen);
    if (planted) {
      std::vector<long> x(5);
      for (long& v : x) v = gen() % 4 == 0 ? small(gen) : 0;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 5; ++j) c.b[i] += c.a[i][j] * x[j];
    } else {
      for (long& v : c.b) v = rhs(gen);
    }
    if (*std::max_element(c.b.begin(), c.b.end()) <= 20) return c;
  }
}

}  // namespace oracle
