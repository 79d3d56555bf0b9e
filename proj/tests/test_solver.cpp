#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sketchfeas/error.hpp"
#include "sketchfeas/solver.hpp"

using namespace sketchfeas;

namespace {

FeasInstance lp(std::initializer_list<std::initializer_list<double>> a, DenseVector b) {
  return FeasInstance(DenseMatrix::from_rows(a), std::move(b));
}

FeasInstance ip(std::initializer_list<std::initializer_list<double>> a, DenseVector b) {
  return FeasInstance(DenseMatrix::from_rows(a), std::move(b), Domain::IntegerNonneg);
}

FeasInstance from_ip_case(const oracle::IpCase& c) {
  std::vector<double> flat, rhs;
  for (const auto& row : c.a) flat.insert(flat.end(), row.begin(), row.end());
  for (long v : c.b) rhs.push_back(static_cast<double>(v));
  return FeasInstance(DenseMatrix::from_row_major(3, 5, flat), DenseVector(rhs),
                      Domain::IntegerNonneg);
}

}  // namespace

TEST_CASE("lp feasibility examples") {
  const FeasInstance id(DenseMatrix::identity(2), DenseVector{1, 2});
  const Verdict v = solve_lp_feasibility(id);
  REQUIRE(v.status == Status::Feasible);
  CHECK((*v.witness)[0] == doctest::Approx(1.0));
  CHECK((*v.witness)[1] == doctest::Approx(2.0));

  const FeasInstance neg = lp({{1, 1}}, DenseVector{-1});
  const Verdict n = solve_lp_feasibility(neg);
  REQUIRE(n.status == Status::Infeasible);
  CHECK((*n.certificate)[0] < 0);
  CHECK(check_farkas(neg, *n.certificate, 1e-7));

  const FeasInstance pair = lp({{1, 1}, {0, 1}}, DenseVector{0, 1});
  const Verdict p = solve_lp_feasibility(pair);
  CHECK(p.status == Status::Infeasible);
  CHECK(check_farkas(pair, *p.certificate, 1e-7));
  // The unique solution of the square system has a negative entry.
  const auto x = oracle::gauss_solve({{1, 1}, {0, 1}}, {0, 1});
  CHECK((*x)[0] == doctest::Approx(-1.0));

  CHECK_THROWS_AS(solve_lp_feasibility(ip({{2}}, DenseVector{3})), UsageError);
}

TEST_CASE("solve_lp examples") {
  const LpResult a = solve_lp(DenseVector{1, 1}, lp({{1, 1}}, DenseVector{1}));
  REQUIRE(a.status == LpStatus::Optimal);
  CHECK(a.objective == doctest::Approx(1.0));

  const LpResult b = solve_lp(DenseVector{-1}, lp({{0}}, DenseVector{0}));
  REQUIRE(b.status == LpStatus::Unbounded);
  CHECK((*b.ray)[0] > 0);

  // x1 <= 3 written as x1 + s = 3.
  const LpResult c = solve_lp(DenseVector{0, 1, 0}, lp({{1, 1, 0}, {1, 0, 1}}, DenseVector{2, 3}));
  REQUIRE(c.status == LpStatus::Optimal);
  CHECK(c.objective == doctest::Approx(0.0));
  CHECK((*c.x)[0] == doctest::Approx(2.0));
  CHECK((*c.x)[1] == doctest::Approx(0.0));
  // Vertex enumeration of {x1 + x2 = 2, 0 <= x1 <= 3}: vertices (2,0), (0,2).
  CHECK(c.objective <= std::min(0.0, 2.0));

  const LpResult d = solve_lp(DenseVector{1, 0}, lp({{1, 1}}, DenseVector{-1}));
  CHECK(d.status == LpStatus::Infeasible);
}

TEST_CASE("solve_lp matches vertex enumeration on random bounded problems") {
  std::mt19937_64 gen(51);
  for (int rep = 0; rep < 100; ++rep) {
    // Rows with positive entries keep the polytope bounded.
    oracle::Rows a(3, std::vector<double>(6));
    std::uniform_real_distribution<double> u(0.1, 1.0);
    for (auto& row : a)
      for (double& v : row) v = u(gen);
    const std::vector<double> b = oracle::random_vector(gen, 3, 0.5, 2.0);
    const std::vector<double> c = oracle::random_vector(gen, 6, -1, 1);
    double best = std::numeric_limits<double>::infinity();
    std::vector<bool> pick(6, false);
    std::fill(pick.begin(), pick.begin() + 3, true);
    do {
      std::vector<std::size_t> cols;
      for (std::size_t j = 0; j < 6; ++j)
        if (pick[j]) cols.push_back(j);
      oracle::Rows basis(3, std::vector<double>(3));
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 3; ++k) basis[i][k] = a[i][cols[k]];
      if (auto x = oracle::gauss_solve(basis, b)) {
        if (*std::min_element(x->begin(), x->end()) >= -1e-12) {
          double obj = 0;
          for (std::size_t k = 0; k < 3; ++k) obj += c[cols[k]] * (*x)[k];
          best = std::min(best, obj);
        }
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));

    const FeasInstance inst(oracle::rows_to_matrix(a), DenseVector(b));
    const LpResult r = solve_lp(DenseVector(c), inst);
    if (std::isinf(best)) {
      CHECK(r.status == LpStatus::Infeasible);
    } else {
      REQUIRE(r.status == LpStatus::Optimal);
      CHECK(r.objective == doctest::Approx(best).epsilon(1e-9).scale(1.0));
      CHECK(check_witness(inst, *r.x, 1e-7));
    }
  }
}

TEST_CASE("check_witness and check_farkas examples") {
  const FeasInstance id(DenseMatrix::identity(2), DenseVector{1, 2});
  CHECK(check_witness(id, DenseVector{1, 2}, 1e-7));
  CHECK_FALSE(check_witness(id, DenseVector{1, 2 - 1e-3}, 1e-7));
  const FeasInstance free_col = lp({{1, 0}}, DenseVector{1});
  CHECK_FALSE(check_witness(free_col, DenseVector{1, -10e-7}, 1e-7));
  CHECK(check_witness(free_col, DenseVector{1, -0.5e-7}, 1e-7));

  const FeasInstance neg = lp({{1, 1}}, DenseVector{-1});
  CHECK(check_farkas(neg, DenseVector{-1}, 1e-7));
  CHECK_FALSE(check_farkas(neg, DenseVector{0}, 1e-7));
  CHECK_FALSE(check_farkas(neg, DenseVector{1}, 1e-7));

  const FeasInstance intg = ip({{1}}, DenseVector{2});
  CHECK(check_witness(intg, DenseVector{2}, 1e-7));
  CHECK_FALSE(check_witness(FeasInstance(DenseMatrix::from_rows({{2}}), DenseVector{3},
                                         Domain::IntegerNonneg),
                            DenseVector{1.5}, 1e-7));
}

TEST_CASE("lp verdicts match basis enumeration") {
  std::mt19937_64 gen(52);
  int feasible = 0, infeasible = 0;
  for (int rep = 0; rep < 500; ++rep) {
    const oracle::LpCase c = oracle::random_lp_case(gen);
    const FeasInstance inst(oracle::rows_to_matrix(c.a), DenseVector(c.b));
    const bool expect = oracle::basis_enumeration_feasible(c.a, c.b);
    const Verdict v = solve_lp_feasibility(inst);
    CHECK(v.status == (expect ? Status::Feasible : Status::Infeasible));
    if (v.status == Status::Feasible) {
      ++feasible;
      REQUIRE(v.witness);
      CHECK_FALSE(v.certificate);
      CHECK(check_witness(inst, *v.witness, 1e-7));
    } else {
      ++infeasible;
      REQUIRE(v.certificate);
      CHECK_FALSE(v.witness);
      CHECK(check_farkas(inst, *v.certificate, 1e-7));
    }
    CHECK(v.iterations <= SolverOptions{}.iteration_limit(5, 8));

    // Tolerances are relative, so scaling the data keeps the verdict.
    const FeasInstance big(inst.A.scaled(1e3), scale(inst.b, 1e3));
    CHECK(solve_lp_feasibility(big).status == v.status);
  }
  CHECK(feasible > 100);
  CHECK(infeasible > 100);
}

TEST_CASE("degenerate and rank-deficient systems") {
  // Duplicate rows: phase I must leave an artificial basic at zero.
  const FeasInstance dup = lp({{1, 2, 3}, {1, 2, 3}, {0, 1, 1}}, DenseVector{6, 6, 2});
  const Verdict v = solve_lp_feasibility(dup);
  REQUIRE(v.status == Status::Feasible);
  CHECK(check_witness(dup, *v.witness, 1e-7));

  const FeasInstance clash = lp({{1, 2, 3}, {1, 2, 3}}, DenseVector{6, 7});
  const Verdict w = solve_lp_feasibility(clash);
  REQUIRE(w.status == Status::Infeasible);
  CHECK(check_farkas(clash, *w.certificate, 1e-7));

  const FeasInstance zero_rhs = lp({{1, -1}, {2, -2}}, DenseVector{0, 0});
  CHECK(solve_lp_feasibility(zero_rhs).status == Status::Feasible);

  // Highly degenerate: many tied ratios from a zero right-hand side.
  std::mt19937_64 gen(53);
  for (int rep = 0; rep < 50; ++rep) {
    const DenseMatrix a = oracle::random_matrix(gen, 6, 12, -1, 1);
    std::vector<double> x(12, 0.0);
    x[rep % 12] = 1.0;
    const FeasInstance inst(a, matvec(a, DenseVector(x)));
    const Verdict r = solve_lp_feasibility(inst);
    REQUIRE(r.status == Status::Feasible);
    CHECK(check_witness(inst, *r.witness, 1e-7));
  }
}

TEST_CASE("iteration limit raises") {
  std::mt19937_64 gen(54);
  const DenseMatrix a = oracle::random_matrix(gen, 10, 30, 0, 1);
  const FeasInstance inst(a, matvec(a, DenseVector(oracle::random_vector(gen, 30, 0, 1))));
  SolverOptions opts;
  opts.max_iters = 1;
  try {
    solve_lp_feasibility(inst, opts);
    FAIL("expected IterationLimitError");
  } catch (const IterationLimitError& e) {
    CHECK(e.iterations() >= 1);
  }
}

TEST_CASE("ip feasibility examples") {
  CHECK(solve_ip_feasibility(ip({{2}}, DenseVector{3})).status == Status::Infeasible);

  const FeasInstance two_three = ip({{2, 3}}, DenseVector{7});
  const Verdict v = solve_ip_feasibility(two_three);
  REQUIRE(v.status == Status::Feasible);
  CHECK((*v.witness)[0] == doctest::Approx(2.0));
  CHECK((*v.witness)[1] == doctest::Approx(1.0));
  CHECK(check_witness(two_three, *v.witness, 1e-7));

  CHECK(solve_ip_feasibility(ip({{3, 5}}, DenseVector{4})).status == Status::Infeasible);
  CHECK_FALSE(oracle::integer_enumeration_feasible({{3, 5}}, {4}, 20));

  const Verdict relax = solve_ip_feasibility(ip({{1, 1}}, DenseVector{-1}));
  CHECK(relax.status == Status::Infeasible);
  CHECK(relax.certificate);
}

TEST_CASE("ip caps yield Unknown") {
  // x1 - x2 = 0.5 has an unbounded relaxation and no integer point.
  const FeasInstance open = ip({{1, -1}}, DenseVector{0.5});
  SolverOptions opts;
  opts.bnb_bound_cap = 50;
  CHECK(solve_ip_feasibility(open, opts).status == Status::Unknown);

  SolverOptions tiny;
  tiny.bnb_node_cap = 2;
  const FeasInstance hard = ip({{2, 2, 2}}, DenseVector{7});
  const Verdict v = solve_ip_feasibility(hard, tiny);
  CHECK(v.status == Status::Unknown);
  CHECK(solve_ip_feasibility(hard).status == Status::Infeasible);
}

TEST_CASE("ip verdicts match exhaustive enumeration") {
  std::mt19937_64 gen(55);
  int feasible = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const oracle::IpCase c = oracle::random_ip_case(gen, rep % 2 == 0);
    const FeasInstance inst = from_ip_case(c);
    const bool expect = oracle::integer_enumeration_feasible(c.a, c.b, 20);
    const Verdict v = solve(inst);
    CHECK(v.status == (expect ? Status::Feasible : Status::Infeasible));
    if (v.status == Status::Feasible) {
      ++feasible;
      CHECK(check_witness(inst, *v.witness, 1e-7));
    }
  }
  CHECK(feasible >= 40);
}
