#include "sketchfeas/rng.hpp"

#include <array>
#include <cmath>

namespace sketchfeas::rng {

namespace {

// Marsaglia–Tsang ziggurat for the half-normal density f(x) = exp(−x²/2):
// 256 layers of equal area kV, base layer extended by the tail beyond kR.
constexpr double kR = 3.654152885361008796;
constexpr double kV = 0.00492867323397465524494;

struct ZigguratTables {
  std::array<double, 257> x;
  std::array<double, 257> f;

  ZigguratTables() {
    x[0] = kV / std::exp(-0.5 * kR * kR);
    x[1] = kR;
    for (int i = 1; i < 255; ++i) {
      x[i + 1] = std::sqrt(-2.0 * std::log(kV / x[i] + std::exp(-0.5 * x[i] * x[i])));
    }
    x[256] = 0.0;
    for (int i = 0; i < 257; ++i) f[i] = std::exp(-0.5 * x[i] * x[i]);
  }
};

const ZigguratTables kTables;

inline const ZigguratTables& tables() { return kTables; }

}  // namespace

double CounterStream::normal(std::uint64_t index) const noexcept {
  const ZigguratTables& z = tables();
  std::uint64_t bits_now = bits(index);
  const auto layer = static_cast<unsigned>(bits_now & 0xFF);
  const double u = 2.0 * to_unit_open(bits_now) - 1.0;  // symmetric in (−1, 1)
  const double x = u * z.x[layer];
  if (std::abs(x) < z.x[layer + 1]) return x;
  return normal_slow(index, bits_now);
}

double CounterStream::normal_slow(std::uint64_t index, std::uint64_t bits_now) const noexcept {
  const ZigguratTables& z = tables();
  const CounterStream fallback(derive_seed(key_, index));
  std::uint64_t next = 0;
  for (;;) {
    const auto layer = static_cast<unsigned>(bits_now & 0xFF);
    const double u = 2.0 * to_unit_open(bits_now) - 1.0;
    const double x = u * z.x[layer];
    if (std::abs(x) < z.x[layer + 1]) return x;
    if (layer == 0) {
      double tx, ty;
      do {
        tx = std::log(fallback.uniform(next++)) / kR;
        ty = std::log(fallback.uniform(next++));
      } while (-2.0 * ty < tx * tx);
      return u < 0.0 ? tx - kR : kR - tx;
    }
    if (z.f[layer + 1] + (z.f[layer] - z.f[layer + 1]) * fallback.uniform(next++) <
        std::exp(-0.5 * x * x)) {
      return x;
    }
    bits_now = fallback.bits(next++);
  }
}

}  // namespace sketchfeas::rng
