#include "sketchfeas/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sketchfeas/error.hpp"
#include "sketchfeas/kernels.hpp"

namespace sketchfeas {

namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw UsageError(std::string(what) + ": non-finite entry at index " + std::to_string(i));
    }
  }
}

void require_same_size(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw UsageError(std::string(op) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                     std::to_string(b) + ")");
  }
}

}  // namespace

DenseVector::DenseVector(std::vector<double> entries) : entries_(std::move(entries)) {
  require_finite(entries_, "DenseVector");
}

DenseVector::DenseVector(std::initializer_list<double> entries) : entries_(entries) {
  require_finite(entries_, "DenseVector");
}

DenseVector DenseVector::zeros(std::size_t n) { return DenseVector(std::vector<double>(n, 0.0)); }

DenseVector DenseVector::unit(std::size_t n, std::size_t index) {
  if (index >= n) throw UsageError("DenseVector::unit: index out of range");
  std::vector<double> e(n, 0.0);
  e[index] = 1.0;
  return DenseVector(std::move(e));
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> col_major)
    : rows_(rows), cols_(cols), data_(std::move(col_major)) {
  if (rows_ == 0 || cols_ == 0) throw UsageError("DenseMatrix: rows and cols must be >= 1");
  if (data_.size() != rows_ * cols_) {
    throw UsageError("DenseMatrix: expected " + std::to_string(rows_ * cols_) + " entries, got " +
                     std::to_string(data_.size()));
  }
  require_finite(data_, "DenseMatrix");
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> data(r * c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw UsageError("DenseMatrix::from_rows: ragged rows");
    std::size_t j = 0;
    for (double v : row) data[j++ * r + i] = v;
    ++i;
  }
  return DenseMatrix(r, c, std::move(data));
}

DenseMatrix DenseMatrix::from_row_major(std::size_t rows, std::size_t cols,
                                        std::span<const double> row_major) {
  if (row_major.size() != rows * cols) {
    throw UsageError("DenseMatrix::from_row_major: expected " + std::to_string(rows * cols) +
                     " entries, got " + std::to_string(row_major.size()));
  }
  std::vector<double> data(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) data[j * rows + i] = row_major[i * cols + j];
  return DenseMatrix(rows, cols, std::move(data));
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  std::vector<double> data(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) data[i * n + i] = 1.0;
  return DenseMatrix(n, n, std::move(data));
}

DenseVector DenseMatrix::column_vector(std::size_t j) const {
  auto col = column(j);
  return DenseVector(std::vector<double>(col.begin(), col.end()));
}

std::vector<double> DenseMatrix::to_row_major() const {
  std::vector<double> out(rows_ * cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i * cols_ + j] = (*this)(i, j);
  return out;
}

DenseMatrix DenseMatrix::scaled(double factor) const {
  std::vector<double> data(data_);
  for (double& v : data) v *= factor;
  return DenseMatrix(rows_, cols_, std::move(data));
}

DenseVector matvec(const DenseMatrix& m, const DenseVector& v) {
  require_same_size(m.cols(), v.size(), "matvec");
  std::vector<double> out(m.rows(), 0.0);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const double vj = v[j];
    if (vj == 0.0) continue;
    auto col = m.column(j);
    for (std::size_t i = 0; i < m.rows(); ++i) out[i] += col[i] * vj;
  }
  return DenseVector(std::move(out));
}

DenseVector matvec_transpose(const DenseMatrix& m, const DenseVector& v) {
  require_same_size(m.rows(), v.size(), "matvec_transpose");
  std::vector<double> out(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) out[j] = dot(m.column(j), v.view());
  return DenseVector(std::move(out));
}

DenseMatrix matmul(const DenseMatrix& left, const DenseMatrix& right) {
  require_same_size(left.cols(), right.rows(), "matmul");
  std::vector<double> out(left.rows() * right.cols());
  kernels::parallel::gemm({left.rows(), left.cols(), right.cols()}, left.data(), right.data(),
                          out);
  return DenseMatrix(left.rows(), right.cols(), std::move(out));
}

double dot(std::span<const double> u, std::span<const double> v) {
  require_same_size(u.size(), v.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

double two_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

DenseVector axpby(double alpha, const DenseVector& u, double beta, const DenseVector& v) {
  require_same_size(u.size(), v.size(), "axpby");
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = alpha * u[i] + beta * v[i];
  return DenseVector(std::move(out));
}

DenseVector add(const DenseVector& u, const DenseVector& v) { return axpby(1.0, u, 1.0, v); }
DenseVector subtract(const DenseVector& u, const DenseVector& v) { return axpby(1.0, u, -1.0, v); }

DenseVector scale(const DenseVector& v, double factor) {
  std::vector<double> out(v.values());
  for (double& x : out) x *= factor;
  return DenseVector(std::move(out));
}

DenseMatrix normalize_columns(const DenseMatrix& m) {
  std::vector<double> data(m.data().begin(), m.data().end());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const double norm = two_norm(m.column(j));
    if (norm == 0.0) {
      throw DegenerateInputError("normalize_columns: column " + std::to_string(j) + " is zero", j);
    }
    for (std::size_t i = 0; i < m.rows(); ++i) data[j * m.rows() + i] /= norm;
  }
  return DenseMatrix(m.rows(), m.cols(), std::move(data));
}

namespace linalg {

std::optional<std::vector<double>> solve_square(std::size_t n, std::vector<double> a,
                                                std::vector<double> rhs, double singular_tol) {
  if (a.size() != n * n || rhs.size() != n) throw UsageError("solve_square: bad dimensions");
  double scale_max = 0.0;
  for (double v : a) scale_max = std::max(scale_max, std::abs(v));
  if (scale_max == 0.0) return n == 0 ? std::optional(std::vector<double>{}) : std::nullopt;
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[j * n + i]; };

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(at(i, k)) > std::abs(at(piv, k))) piv = i;
    if (std::abs(at(piv, k)) <= singular_tol * scale_max) return std::nullopt;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
      std::swap(rhs[k], rhs[piv]);
    }
    const double inv = 1.0 / at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = at(i, k) * inv;
      if (f == 0.0) continue;
      at(i, k) = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) at(i, j) -= f * at(k, j);
      rhs[i] -= f * rhs[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t kk = n; kk-- > 0;) {
    double s = rhs[kk];
    for (std::size_t j = kk + 1; j < n; ++j) s -= at(kk, j) * x[j];
    x[kk] = s / at(kk, kk);
  }
  return x;
}

std::optional<std::vector<double>> least_squares(std::size_t m, std::size_t p,
                                                 std::vector<double> a, std::vector<double> rhs,
                                                 double rank_tol) {
  if (a.size() != m * p || rhs.size() != m) throw UsageError("least_squares: bad dimensions");
  if (p > m) return std::nullopt;
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[j * m + i]; };

  double col_max = 0.0;
  for (std::size_t j = 0; j < p; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += at(i, j) * at(i, j);
    col_max = std::max(col_max, std::sqrt(s));
  }
  if (col_max == 0.0) return p == 0 ? std::optional(std::vector<double>{}) : std::nullopt;

  std::vector<double> diag(p);
  for (std::size_t k = 0; k < p; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < m; ++i) norm += at(i, k) * at(i, k);
    norm = std::sqrt(norm);
    if (norm <= rank_tol * col_max) return std::nullopt;
    const double alpha = at(k, k) > 0 ? -norm : norm;
    // Householder vector v = x - alpha e_k stored in place below the diagonal.
    at(k, k) -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < m; ++i) vnorm2 += at(i, k) * at(i, k);
    if (vnorm2 > 0.0) {
      for (std::size_t j = k + 1; j < p; ++j) {
        double s = 0.0;
        for (std::size_t i = k; i < m; ++i) s += at(i, k) * at(i, j);
        const double f = 2.0 * s / vnorm2;
        for (std::size_t i = k; i < m; ++i) at(i, j) -= f * at(i, k);
      }
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += at(i, k) * rhs[i];
      const double f = 2.0 * s / vnorm2;
      for (std::size_t i = k; i < m; ++i) rhs[i] -= f * at(i, k);
    }
    diag[k] = alpha;
  }
  std::vector<double> x(p);
  for (std::size_t kk = p; kk-- > 0;) {
    double s = rhs[kk];
    for (std::size_t j = kk + 1; j < p; ++j) s -= at(kk, j) * x[j];
    x[kk] = s / diag[kk];
  }
  return x;
}

}  // namespace linalg

}  // namespace sketchfeas
