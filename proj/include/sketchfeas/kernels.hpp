#pragma once

// Data-parallel inner loops. Every kernel exists twice: a plain serial
// reference and an OpenMP version. The library calls the OpenMP version when
// built with it; the serial one is kept for tests and the benchmark.

#include <cstddef>
#include <exception>
#include <span>

#ifdef SKETCHFEAS_HAVE_OPENMP
#include <omp.h>
#endif

namespace sketchfeas::kernels {

// out = left · right, all column-major. left is rows×inner, right is
// inner×cols, out is rows×cols and is overwritten.
struct GemmShape {
  std::size_t rows;
  std::size_t inner;
  std::size_t cols;
};

namespace serial {

void gemm(GemmShape shape, std::span<const double> left, std::span<const double> right,
          std::span<double> out);

template <class Predicate>
std::size_t count_successes(std::size_t trials, Predicate&& success) {
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    if (success(t)) ++hits;
  }
  return hits;
}

template <class Body>
void for_each_index(std::size_t count, Body&& body) {
  for (std::size_t i = 0; i < count; ++i) body(i);
}

// body(begin, end) over consecutive blocks of at most `block` indices.
template <class Body>
void for_each_block(std::size_t count, std::size_t block, Body&& body) {
  for (std::size_t b = 0; b < count; b += block) body(b, b + block < count ? b + block : count);
}

}  // namespace serial

namespace omp {

void gemm(GemmShape shape, std::span<const double> left, std::span<const double> right,
          std::span<double> out);

// Exceptions cannot cross an OpenMP region; the first one thrown by any
// iteration is kept and rethrown on the calling thread.
class FirstError {
 public:
  template <class F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
#pragma omp critical(sketchfeas_first_error)
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

// Trial t must depend only on t (per-trial seeds), so the count is the same
// for any thread count.
template <class Predicate>
std::size_t count_successes(std::size_t trials, Predicate&& success) {
  long long hits = 0;
  const auto n = static_cast<long long>(trials);
  FirstError guard;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : hits)
  for (long long t = 0; t < n; ++t) {
    guard.run([&] {
      if (success(static_cast<std::size_t>(t))) ++hits;
    });
  }
  guard.rethrow();
  return static_cast<std::size_t>(hits);
}

template <class Body>
void for_each_index(std::size_t count, Body&& body) {
  const auto n = static_cast<long long>(count);
  FirstError guard;
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < n; ++i) guard.run([&] { body(static_cast<std::size_t>(i)); });
  guard.rethrow();
}

template <class Body>
void for_each_block(std::size_t count, std::size_t block, Body&& body) {
  const auto blocks = static_cast<long long>((count + block - 1) / block);
  FirstError guard;
#pragma omp parallel for schedule(static)
  for (long long bi = 0; bi < blocks; ++bi) {
    const std::size_t b = static_cast<std::size_t>(bi) * block;
    guard.run([&] { body(b, b + block < count ? b + block : count); });
  }
  guard.rethrow();
}

}  // namespace omp

#ifdef SKETCHFEAS_HAVE_OPENMP
namespace parallel = omp;
#else
namespace parallel = serial;
#endif

int max_threads();

}  // namespace sketchfeas::kernels
