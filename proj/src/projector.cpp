#include "sketchfeas/projector.hpp"

#include <cmath>

#include "sketchfeas/error.hpp"
#include "sketchfeas/kernels.hpp"
#include "sketchfeas/rng.hpp"

namespace sketchfeas {

namespace {

constexpr std::size_t kFillBlock = 4096;

// Entries [begin, end) of the column-major k×m matrix, written to out[0..).
void fill_range(ProjectorFamily family, const rng::CounterStream& stream, double scale,
                std::size_t begin, std::size_t end, double* out) {
  switch (family) {
    case ProjectorFamily::Gaussian:
      for (std::size_t e = begin; e < end; ++e) *out++ = scale * stream.normal(e);
      break;
    case ProjectorFamily::Rademacher: {
      const double values[2] = {-scale, scale};
      std::uint64_t word = stream.bits(begin / 64);
      for (std::size_t e = begin; e < end; ++e) {
        if (e % 64 == 0) word = stream.bits(e / 64);
        *out++ = values[(word >> (e % 64)) & 1U];
      }
      break;
    }
    case ProjectorFamily::AchlioptasSparse: {
      // Uniform on {0,…,5}: 0 → +1 (1/6), 5 → −1 (1/6), otherwise 0 (2/3).
      const double values[6] = {scale, 0.0, 0.0, 0.0, 0.0, -scale};
      for (std::size_t e = begin; e < end; ++e) *out++ = values[((stream.bits(e) >> 11) * 6) >> 53];
      break;
    }
  }
}

rng::CounterStream family_stream(ProjectorFamily family, std::uint64_t seed) {
  return rng::CounterStream(rng::derive_seed(seed, static_cast<std::uint64_t>(family)));
}

void require_k(std::size_t k, std::size_t m, const char* op) {
  if (k == 0 || k > m) {
    throw UsageError(std::string(op) + ": need 1 <= k <= m, got k=" + std::to_string(k) +
                     ", m=" + std::to_string(m));
  }
}

}  // namespace

std::string to_string(ProjectorFamily f) {
  switch (f) {
    case ProjectorFamily::Gaussian: return "gaussian";
    case ProjectorFamily::Rademacher: return "rademacher";
    case ProjectorFamily::AchlioptasSparse: return "sparse";
  }
  return "unknown";
}

ProjectorFamily parse_projector_family(const std::string& name) {
  if (name == "gaussian") return ProjectorFamily::Gaussian;
  if (name == "rademacher") return ProjectorFamily::Rademacher;
  if (name == "sparse") return ProjectorFamily::AchlioptasSparse;
  throw UsageError("unknown projector family '" + name + "' (expected gaussian|rademacher|sparse)");
}

double projector_scale(ProjectorFamily family, std::size_t k) {
  const double kk = static_cast<double>(k);
  return family == ProjectorFamily::AchlioptasSparse ? std::sqrt(3.0 / kk) : 1.0 / std::sqrt(kk);
}

Projector sample_projector(ProjectorFamily family, std::size_t k, std::size_t m,
                           std::uint64_t seed) {
  require_k(k, m, "sample_projector");
  std::vector<double> entries(k * m);
  const rng::CounterStream stream = family_stream(family, seed);
  const double scale = projector_scale(family, k);
  kernels::parallel::for_each_block(entries.size(), kFillBlock, [&](std::size_t b, std::size_t e) {
    fill_range(family, stream, scale, b, e, entries.data() + b);
  });
  return Projector{family, k, m, seed, DenseMatrix(k, m, std::move(entries))};
}

DenseVector sample_and_apply(ProjectorFamily family, std::size_t k, std::size_t m,
                             std::uint64_t seed, const DenseVector& v) {
  require_k(k, m, "sample_and_apply");
  if (v.size() != m) {
    throw UsageError("sample_and_apply: expected dimension " + std::to_string(m) + ", got " +
                     std::to_string(v.size()));
  }
  const rng::CounterStream stream = family_stream(family, seed);
  const double scale = projector_scale(family, k);
  std::vector<double> column(k), out(k, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    fill_range(family, stream, scale, j * k, (j + 1) * k, column.data());
    const double vj = v[j];
    for (std::size_t i = 0; i < k; ++i) out[i] += column[i] * vj;
  }
  return DenseVector(std::move(out));
}

Projector explicit_projector(DenseMatrix matrix) {
  const std::size_t k = matrix.rows();
  const std::size_t m = matrix.cols();
  if (k > m) throw UsageError("explicit_projector: k > m");
  return Projector{ProjectorFamily::Gaussian, k, m, 0, std::move(matrix)};
}

DenseVector apply(const Projector& t, const DenseVector& v) {
  if (v.size() != t.m) {
    throw UsageError("apply: projector expects dimension " + std::to_string(t.m) + ", got " +
                     std::to_string(v.size()));
  }
  return matvec(t.matrix, v);
}

FeasInstance apply_to_instance(const Projector& t, const FeasInstance& inst) {
  if (inst.rows() != t.m) {
    throw UsageError("apply_to_instance: projector has m=" + std::to_string(t.m) +
                     " but instance has " + std::to_string(inst.rows()) + " rows");
  }
  return FeasInstance(matmul(t.matrix, inst.A), matvec(t.matrix, inst.b), inst.domain);
}

namespace {

void require_open_unit(double v, const char* name, const char* op) {
  if (!(v > 0.0 && v < 1.0)) {
    throw UsageError(std::string(op) + ": " + name + " must lie in (0,1), got " + std::to_string(v));
  }
}

// ceil() that ignores relative rounding noise, so an exact 4.0000000000000009 yields 4.
std::size_t ceil_count(double x) {
  const double k = std::ceil(x * (1.0 - 1e-12));
  return k < 1.0 ? 1 : static_cast<std::size_t>(k);
}

}  // namespace

std::size_t choose_k_jll(std::size_t points, double eps, double delta, double C) {
  require_open_unit(eps, "eps", "choose_k_jll");
  require_open_unit(delta, "delta", "choose_k_jll");
  if (points < 2) throw UsageError("choose_k_jll: need at least 2 points");
  if (!(C > 0.0)) throw UsageError("choose_k_jll: C must be positive");
  const double p = static_cast<double>(points);
  return ceil_count(std::log(p * (p - 1.0) / delta) / (C * eps * eps));
}

std::size_t choose_k_rlm(std::size_t card_X, double delta, double C) {
  require_open_unit(delta, "delta", "choose_k_rlm");
  if (card_X < 1) throw UsageError("choose_k_rlm: |X| must be >= 1");
  if (!(C > 0.0)) throw UsageError("choose_k_rlm: C must be positive");
  return ceil_count((std::log(2.0 / delta) + std::log(static_cast<double>(card_X))) / C);
}

}  // namespace sketchfeas
