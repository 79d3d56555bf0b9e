#include <cmath>
#include <random>

#include "doctest.h"
#include "sketchfeas/bounds.hpp"
#include "sketchfeas/error.hpp"
#include "sketchfeas/projector.hpp"

using namespace sketchfeas;

namespace {

std::uint64_t count_restricted_set(const std::vector<double>& alpha, double d) {
  const std::size_t n = alpha.size();
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s += alpha[i];
    if (s <= d) ++count;
  }
  return count;
}

std::uint64_t binomial_prefix_sum(std::uint64_t n, std::uint64_t upto) {
  std::uint64_t total = 0, c = 1;
  for (std::uint64_t j = 0; j <= std::min(upto, n); ++j) {
    total += c;
    c = c * (n - j) / (j + 1);
  }
  return total;
}

}  // namespace

TEST_CASE("pair distortion bound") {
  const BoundReport r = pair_distortion_bound(2, 0.5, 40, 1.0);
  CHECK(r.lower_bound == doctest::Approx(1 - 2 * std::exp(-10.0)).epsilon(1e-14));
  CHECK(std::abs(r.lower_bound - 0.999909) <= 1e-6);
  CHECK(pair_distortion_bound(2, 0.5, 0, 1.0).lower_bound == 0.0);
  CHECK(pair_distortion_bound(2, 0.5, 0, 1.0).vacuous());
  CHECK(r.inputs.at("points") == 2);
  CHECK(r.inputs.at("k") == 40);
  CHECK(r.kind == BoundKind::PairDistortion);
}

TEST_CASE("rlm finite bound") {
  CHECK(rlm_finite_bound(1, std::log(200.0), 1.0).lower_bound == doctest::Approx(0.99).epsilon(1e-12));
  CHECK(rlm_finite_bound(0, 3.0, 1.0).lower_bound == 1.0);
  const double k = static_cast<double>(choose_k_rlm(100, 0.01, 1.0));
  CHECK(rlm_finite_bound(100, k, 1.0).lower_bound >= 0.99);
}

TEST_CASE("pointed cone bound") {
  const double v = pointed_cone_bound(4, 0.1, 2000, 1.0).lower_bound;
  CHECK(v == doctest::Approx(1 - 20 * std::exp(-18.0)).epsilon(1e-14));
  CHECK(std::abs(v - 0.99999970) <= 1e-8);
  CHECK(pointed_cone_bound(3, 0.5, 64, 1.0).raw == doctest::Approx(1 - 16 * std::exp(-8.0)));
}

TEST_CASE("convex hull bound") {
  const BoundReport r = convhull_bound(3, 0.5, 100, 1.0);
  CHECK(r.lower_bound == doctest::Approx(1 - 18 * std::exp(-12.5)).epsilon(1e-14));
  CHECK(std::abs(r.lower_bound - 0.999933) <= 1e-6);
  CHECK_FALSE(r.note.empty());
  CHECK(convhull_bound(1, 0.5, 0, 1.0).lower_bound == 0.0);
}

TEST_CASE("cone bound") {
  const BoundReport r = cone_thm2_bound(3, 0.5, 100, 1.0);
  CHECK(r.lower_bound == doctest::Approx(1 - 24 * std::exp(-12.5)).epsilon(1e-14));
  // Exact value 0.99991056; quoted to six digits as 0.999910.
  CHECK(std::abs(r.lower_bound - 0.999910) <= 1e-6);
  CHECK(r.lower_bound <= convhull_bound(3, 0.5, 100, 1.0).lower_bound);
  CHECK(cone_thm2_bound(1, 0.5, 1e4, 1.0).lower_bound == doctest::Approx(1.0));
}

TEST_CASE("eps threshold") {
  CHECK(eps_threshold_thm2(0.6, 0.8, 1.0) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(eps_threshold_thm2(1.0, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  double prev = 1.0;
  for (double mu = 1.0; mu < 10; mu += 0.5) {
    const double e = eps_threshold_thm2(0.6, 0.8, mu);
    CHECK(e < prev);
    CHECK(e < 0.36);
    prev = e;
  }
  CHECK_THROWS_AS(eps_threshold_thm2(0.6, 0.8, 0.9), UsageError);
  CHECK_THROWS_AS(eps_threshold_thm2(0.5, 0.8, 1.0), UsageError);
}

TEST_CASE("restricted cardinality bound examples") {
  const auto [dbar, bound] = restricted_cardinality_bound(DenseVector{1, 2, 1}, 2);
  CHECK(dbar == 2);
  CHECK(bound == 9);
  CHECK(count_restricted_set({1, 2, 1}, 2) == 5);

  const auto [dn, bn] = restricted_cardinality_bound(DenseVector{1, 1, 1, 1, 1}, 5);
  CHECK(dn == 5);
  CHECK(bn == 3125);
  CHECK(bn >= 32u);

  const auto [d0, b0] = restricted_cardinality_bound(DenseVector{2, 3}, 1);
  CHECK(d0 == 0);
  CHECK(b0 == 1);
  CHECK(count_restricted_set({2, 3}, 1) == 1);

  const auto [ds, bs] = restricted_cardinality_bound(DenseVector{1e-30, 1}, 1);
  CHECK(bs == std::numeric_limits<std::uint64_t>::max());
  (void)ds;
  CHECK_THROWS_AS(restricted_cardinality_bound(DenseVector{1, 0}, 1), UsageError);
}

TEST_CASE("restricted cardinality with dbar = 1 exceeds n") {
  // {0, e1, e2, e3} has four points while n^dbar = 3, so the strict bound
  // only holds from dbar = 2 on; n = 2, dbar = 2 is tight.
  const auto [dbar, bound] = restricted_cardinality_bound(DenseVector{1, 1, 1}, 1);
  CHECK(dbar == 1);
  CHECK(count_restricted_set({1, 1, 1}, 1) == bound + 1);
  CHECK(count_restricted_set({1, 1}, 2) == restricted_cardinality_bound(DenseVector{1, 1}, 2).second);
}

TEST_CASE("restricted cardinality against brute force") {
  std::mt19937_64 gen(41);
  std::uniform_int_distribution<std::size_t> dim(2, 6);
  std::uniform_real_distribution<double> a(0.2, 3.0), dd(0.1, 6.0);
  int strict_checked = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = dim(gen);
    std::vector<double> alpha(n);
    for (double& x : alpha) x = a(gen);
    const double d = dd(gen);
    const auto [dbar, bound] = restricted_cardinality_bound(DenseVector(alpha), d);
    const std::uint64_t card = count_restricted_set(alpha, d);
    // The counting argument: |X| <= sum_{j <= dbar} C(n, j).
    CHECK(card <= binomial_prefix_sum(n, dbar));
    if (dbar >= 2 && !(n == 2 && dbar == 2)) {
      CHECK(card < bound);
      ++strict_checked;
    }
    if (dbar >= 1) CHECK(card <= bound + 1);
  }
  CHECK(strict_checked > 50);
}

TEST_CASE("bounds are clamped and monotone on a random grid") {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> eps_d(0.01, 0.99), k_d(0, 5000), c_d(0.05, 2.0);
  std::uniform_int_distribution<std::size_t> n_d(1, 500);
  for (int rep = 0; rep < 100; ++rep) {
    const double eps = eps_d(gen), k = k_d(gen), C = c_d(gen);
    const std::size_t n = n_d(gen);
    const double dk = 1 + k_d(gen) / 10;
    using F = BoundReport (*)(std::size_t, double, double, double);
    for (F f : {F(pair_distortion_bound), F(pointed_cone_bound), F(convhull_bound),
                F(cone_thm2_bound)}) {
      const std::size_t count = f == F(pair_distortion_bound) ? n + 1 : n;
      const BoundReport r = f(count, eps, k, C);
      CHECK(r.lower_bound >= 0.0);
      CHECK(r.lower_bound <= 1.0);
      CHECK(f(count, eps, k + dk, C).lower_bound >= r.lower_bound);
      CHECK(f(count + 3, eps, k, C).lower_bound <= r.lower_bound);
    }
    const BoundReport r = rlm_finite_bound(n, k / 100, C);
    CHECK(r.lower_bound >= 0.0);
    CHECK(r.lower_bound <= 1.0);
    CHECK(rlm_finite_bound(n, k / 100 + dk, C).lower_bound >= r.lower_bound);
    CHECK(rlm_finite_bound(n * 2, k / 100, C).lower_bound <= r.lower_bound);
  }
}

TEST_CASE("bound evaluators validate inputs") {
  CHECK_THROWS_AS(pair_distortion_bound(2, 0.0, 1, 1), UsageError);
  CHECK_THROWS_AS(pointed_cone_bound(2, 1.0, 1, 1), UsageError);
  CHECK_THROWS_AS(convhull_bound(2, 0.5, 1, 0), UsageError);
  CHECK_THROWS_AS(cone_thm2_bound(2, 0.5, -1, 1), UsageError);
}
