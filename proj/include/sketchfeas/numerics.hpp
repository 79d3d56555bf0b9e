#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace sketchfeas {

// Real vector whose entries are all finite. Immutable once built; algorithms
// assemble a std::vector<double> and wrap it at the end.
class DenseVector {
 public:
  DenseVector() = default;
  explicit DenseVector(std::vector<double> entries);
  DenseVector(std::initializer_list<double> entries);

  static DenseVector zeros(std::size_t n);
  static DenseVector unit(std::size_t n, std::size_t index);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> view() const noexcept { return entries_; }
  const std::vector<double>& values() const noexcept { return entries_; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  bool operator==(const DenseVector&) const = default;

 private:
  std::vector<double> entries_;
};

// Column-major dense matrix with rows, cols >= 1 and finite entries.
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> col_major);

  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static DenseMatrix from_row_major(std::size_t rows, std::size_t cols,
                                    std::span<const double> row_major);
  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }
  std::span<const double> column(std::size_t j) const {
    return {data_.data() + j * rows_, rows_};
  }
  DenseVector column_vector(std::size_t j) const;
  std::span<const double> data() const noexcept { return data_; }
  std::vector<double> to_row_major() const;

  // Matrix with every entry multiplied by `factor`.
  DenseMatrix scaled(double factor) const;

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

DenseVector matvec(const DenseMatrix& m, const DenseVector& v);
// Mᵀv.
DenseVector matvec_transpose(const DenseMatrix& m, const DenseVector& v);
DenseMatrix matmul(const DenseMatrix& left, const DenseMatrix& right);

double dot(std::span<const double> u, std::span<const double> v);
double two_norm(std::span<const double> v);
inline double two_norm(const DenseVector& v) { return two_norm(v.view()); }

DenseVector add(const DenseVector& u, const DenseVector& v);
DenseVector subtract(const DenseVector& u, const DenseVector& v);
DenseVector scale(const DenseVector& v, double factor);
// αu + βv
DenseVector axpby(double alpha, const DenseVector& u, double beta, const DenseVector& v);

// Throws DegenerateInputError naming the first zero column.
DenseMatrix normalize_columns(const DenseMatrix& m);

namespace linalg {

// Solves the n×n system M x = rhs (M column-major) by Gaussian elimination
// with partial pivoting. Returns nullopt when a pivot falls below
// `singular_tol` times the largest entry of M.
std::optional<std::vector<double>> solve_square(std::size_t n, std::vector<double> col_major,
                                                std::vector<double> rhs,
                                                double singular_tol = 1e-13);

// min ‖M x − rhs‖ for an m×p column-major M with m >= p via Householder QR.
// Returns nullopt when M is numerically rank deficient.
std::optional<std::vector<double>> least_squares(std::size_t m, std::size_t p,
                                                 std::vector<double> col_major,
                                                 std::vector<double> rhs,
                                                 double rank_tol = 1e-12);

}  // namespace linalg

}  // namespace sketchfeas
