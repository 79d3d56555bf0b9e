#include "sketchfeas/kernels.hpp"

#include <cstring>
#include <vector>

namespace sketchfeas::kernels {

namespace {

constexpr std::size_t kColumnBlock = 4;

// Four doubles; lowered to whatever vector width the enclosing target has.
typedef double Lane4 __attribute__((vector_size(32)));
#pragma GCC diagnostic ignored "-Wpsabi"

[[gnu::always_inline]] inline Lane4 load4(const double* p) {
  Lane4 v;
  std::memcpy(&v, p, sizeof v);
  return v;
}

[[gnu::always_inline]] inline void store4(double* p, Lane4 v) { std::memcpy(p, &v, sizeof v); }

constexpr std::size_t kRowTile = 8;

// left re-laid as ceil(rows/8) tiles, each inner×8 and contiguous, with the
// last tile zero-padded.
std::vector<double> pack_left(GemmShape shape, const double* left) {
  const auto [rows, inner, cols] = shape;
  const std::size_t tiles = (rows + kRowTile - 1) / kRowTile;
  std::vector<double> packed(tiles * inner * kRowTile, 0.0);
  for (std::size_t l = 0; l < inner; ++l) {
    for (std::size_t i = 0; i < rows; ++i) {
      packed[((i / kRowTile) * inner + l) * kRowTile + i % kRowTile] = left[l * rows + i];
    }
  }
  return packed;
}

// Output columns [first, first + kColumnBlock). Each 8×4 tile of
// accumulators stays in registers across the inner loop. Every entry is
// summed in increasing l, as in gemm_column.
[[gnu::always_inline]] inline void gemm_block4_body(GemmShape shape, const double* packed,
                                                    const double* right, double* out,
                                                    std::size_t first) {
  const auto [rows, inner, cols] = shape;
  const double* r0 = right + first * inner;
  const double* r1 = r0 + inner;
  const double* r2 = r1 + inner;
  const double* r3 = r2 + inner;
  double* o[kColumnBlock] = {out + first * rows, out + (first + 1) * rows,
                             out + (first + 2) * rows, out + (first + 3) * rows};
  for (std::size_t i0 = 0; i0 < rows; i0 += kRowTile) {
    const double* tile = packed + (i0 / kRowTile) * inner * kRowTile;
    Lane4 acc[2 * kColumnBlock] = {};
    for (std::size_t l = 0; l < inner; ++l) {
      const Lane4 lo = load4(tile + l * kRowTile);
      const Lane4 hi = load4(tile + l * kRowTile + 4);
      acc[0] += lo * r0[l];
      acc[1] += hi * r0[l];
      acc[2] += lo * r1[l];
      acc[3] += hi * r1[l];
      acc[4] += lo * r2[l];
      acc[5] += hi * r2[l];
      acc[6] += lo * r3[l];
      acc[7] += hi * r3[l];
    }
    if (i0 + kRowTile <= rows) {
      for (std::size_t c = 0; c < kColumnBlock; ++c) {
        store4(o[c] + i0, acc[2 * c]);
        store4(o[c] + i0 + 4, acc[2 * c + 1]);
      }
    } else {
      double lanes[2 * kColumnBlock][4];
      std::memcpy(lanes, acc, sizeof lanes);
      for (std::size_t c = 0; c < kColumnBlock; ++c)
        for (std::size_t ii = 0; i0 + ii < rows; ++ii) o[c][i0 + ii] = lanes[2 * c + ii / 4][ii % 4];
    }
  }
}

void gemm_block4_generic(GemmShape shape, const double* packed, const double* right, double* out,
                         std::size_t first) {
  gemm_block4_body(shape, packed, right, out, first);
}

using Block4Kernel = void (*)(GemmShape, const double*, const double*, double*, std::size_t);

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
__attribute__((target("avx2,fma"))) void gemm_block4_avx2(GemmShape shape, const double* packed,
                                                          const double* right, double* out,
                                                          std::size_t first) {
  gemm_block4_body(shape, packed, right, out, first);
}

Block4Kernel pick_block4() {
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return gemm_block4_avx2;
  return gemm_block4_generic;
}
#else
Block4Kernel pick_block4() { return gemm_block4_generic; }
#endif

void gemm_block4(GemmShape shape, const double* packed, const double* right, double* out,
                 std::size_t first) {
  static const Block4Kernel kernel = pick_block4();
  kernel(shape, packed, right, out, first);
}

void gemm_column(GemmShape shape, const double* left, const double* right, double* out,
                 std::size_t j) {
  const auto [rows, inner, cols] = shape;
  double* oc = out + j * rows;
  for (std::size_t i = 0; i < rows; ++i) oc[i] = 0.0;
  for (std::size_t l = 0; l < inner; ++l) {
    const double r = right[j * inner + l];
    const double* lc = left + l * rows;
    for (std::size_t i = 0; i < rows; ++i) oc[i] += lc[i] * r;
  }
}

// Block b covers columns [4b, 4b + 4), the last one possibly short.
void gemm_task(GemmShape shape, const double* left, const double* packed, const double* right,
               double* out, std::size_t b) {
  const std::size_t first = b * kColumnBlock;
  if (first + kColumnBlock <= shape.cols) {
    gemm_block4(shape, packed, right, out, first);
  } else {
    for (std::size_t j = first; j < shape.cols; ++j) gemm_column(shape, left, right, out, j);
  }
}

std::size_t column_blocks(GemmShape shape) {
  return (shape.cols + kColumnBlock - 1) / kColumnBlock;
}

}  // namespace

namespace serial {

void gemm(GemmShape shape, std::span<const double> left, std::span<const double> right,
          std::span<double> out) {
  const std::vector<double> packed = pack_left(shape, left.data());
  const std::size_t blocks = column_blocks(shape);
  for (std::size_t b = 0; b < blocks; ++b)
    gemm_task(shape, left.data(), packed.data(), right.data(), out.data(), b);
}

}  // namespace serial

namespace omp {

void gemm(GemmShape shape, std::span<const double> left, std::span<const double> right,
          std::span<double> out) {
  const std::vector<double> packed = pack_left(shape, left.data());
  const auto blocks = static_cast<long long>(column_blocks(shape));
  // Column blocks are independent; each thread owns whole blocks.
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < blocks; ++b) {
    gemm_task(shape, left.data(), packed.data(), right.data(), out.data(),
              static_cast<std::size_t>(b));
  }
}

}  // namespace omp

int max_threads() {
#ifdef SKETCHFEAS_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace sketchfeas::kernels
