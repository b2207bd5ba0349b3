#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qpricing/lp.hpp"
#include "support/oracles.hpp"

using namespace qpricing;

TEST_CASE("simplex solves a separable box LP") {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {1, 1};
  lp.constraints = {{{1, 0}, 1.0}, {{0, 1}, 2.0}};
  LpSolution sol = solve(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  REQUIRE(sol.objective_value == Catch::Approx(3.0));
  REQUIRE(sol.x[0] == Catch::Approx(1.0));
  REQUIRE(sol.x[1] == Catch::Approx(2.0));
}

TEST_CASE("an unconstrained objective is unbounded") {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.objective = {1};
  REQUIRE(solve(lp).status == LpStatus::Unbounded);
}

TEST_CASE("upper bounds tame an otherwise unbounded LP") {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.objective = {1};
  lp.upper_bounds = {7.0};
  LpSolution sol = solve(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  REQUIRE(sol.objective_value == Catch::Approx(7.0));
}

TEST_CASE("the harmonic packing LP prices item i at 1/i") {
  LinearProgram lp;
  lp.num_vars = 3;
  lp.objective = {1, 1, 1};
  lp.constraints = {{{1, 0, 0}, 1.0}, {{0, 1, 0}, 0.5}, {{0, 0, 1}, 1.0 / 3.0}};
  LpSolution sol = solve(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  REQUIRE(sol.objective_value == Catch::Approx(1.0 + 0.5 + 1.0 / 3.0));
}

TEST_CASE("negative bounds force phase one and can be infeasible") {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.objective = {1};
  lp.constraints = {{{1}, -1.0}};
  REQUIRE(solve(lp).status == LpStatus::Infeasible);

  // feasible with x >= 2: maximize -x  =>  x = 2
  LinearProgram lp2;
  lp2.num_vars = 1;
  lp2.objective = {-1};
  lp2.constraints = {{{-1}, -2.0}, {{1}, 5.0}};
  LpSolution sol = solve(lp2);
  REQUIRE(sol.status == LpStatus::Optimal);
  REQUIRE(sol.x[0] == Catch::Approx(2.0));
}

TEST_CASE("simplex matches vertex enumeration on random packing LPs") {
  std::mt19937_64 rng(90210);
  for (int round = 0; round < 1000; ++round) {
    LinearProgram lp = testsupport::random_lp(rng);
    LpSolution sol = solve(lp);
    testsupport::BruteLpResult brute = testsupport::brute_force_lp(lp);
    if (brute.unbounded) {
      REQUIRE(sol.status == LpStatus::Unbounded);
    } else {
      REQUIRE(sol.status == LpStatus::Optimal);
      REQUIRE(sol.objective_value == Catch::Approx(brute.best_interior).margin(1e-6));
    }
  }
}

TEST_CASE("raising a constraint bound never lowers the optimum") {
  std::mt19937_64 rng(31337);
  for (int round = 0; round < 200; ++round) {
    LinearProgram lp = testsupport::random_lp(rng);
    if (lp.upper_bounds.empty()) continue;  // keep both solves bounded
    LpSolution before = solve(lp);
    size_t row = rng() % lp.constraints.size();
    LinearProgram relaxed = lp;
    relaxed.constraints[row].bound += 1.0;
    LpSolution after = solve(relaxed);
    REQUIRE(after.status == LpStatus::Optimal);
    REQUIRE(after.objective_value >= before.objective_value - 1e-7);
  }
}

TEST_CASE("solve_lazy without violations is plain solve") {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {1, 1};
  lp.constraints = {{{1, 0}, 1.0}, {{0, 1}, 2.0}};
  int calls = 0;
  LpSolution sol = solve_lazy(
      lp,
      [&](const std::vector<double>&) -> std::optional<LpConstraint> {
        ++calls;
        return std::nullopt;
      },
      10);
  REQUIRE(sol.objective_value == Catch::Approx(3.0));
  REQUIRE(calls == 1);
}

TEST_CASE("solve_lazy drives the two-support-set envy example") {
  // buyer with support sets {0} and {1}, fixed minimizer {0}, value 1, U = 1:
  // the first solve prices p0 = 1, p1 = 0; the oracle then reports the
  // cheaper set {1}, adding p0 <= p1; the resolve must lift p1 to 1.
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {1, 0};
  lp.constraints = {{{1, 0}, 1.0}};
  lp.upper_bounds = {1.0, 1.0};
  int cuts = 0;
  LpSolution sol = solve_lazy(
      lp,
      [&](const std::vector<double>& x) -> std::optional<LpConstraint> {
        double fixed = x[0];
        double alt = x[1];
        if (alt < fixed - 1e-9) {
          ++cuts;
          return LpConstraint{{1.0, -1.0}, 0.0};
        }
        return std::nullopt;
      },
      10);
  REQUIRE(cuts == 1);
  REQUIRE(sol.status == LpStatus::Optimal);
  REQUIRE(sol.objective_value == Catch::Approx(1.0));
  REQUIRE(sol.x[0] == Catch::Approx(1.0));
  REQUIRE(sol.x[1] >= 1.0 - 1e-9);

  // Cross-check: materializing both constraints up front gives the same optimum.
  LinearProgram full = lp;
  full.constraints.push_back({{1.0, -1.0}, 0.0});
  REQUIRE(solve(full).objective_value == Catch::Approx(sol.objective_value));
}

TEST_CASE("solve_lazy reports non-convergent separation") {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.objective = {1};
  lp.upper_bounds = {1.0};
  int calls = 0;
  auto always_violated = [&](const std::vector<double>&) -> std::optional<LpConstraint> {
    ++calls;
    return LpConstraint{{0.0}, static_cast<double>(calls)};  // never actually binds
  };
  REQUIRE_THROWS_AS(solve_lazy(lp, always_violated, 3), SeparationError);
  try {
    solve_lazy(lp, always_violated, 3);
  } catch (const SeparationError& e) {
    REQUIRE(e.last.status == LpStatus::Optimal);
    REQUIRE(e.last.objective_value == Catch::Approx(1.0));
  }
}

TEST_CASE("malformed programs are rejected") {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {1};
  REQUIRE_THROWS_AS(solve(lp), ValidationError);
  lp.objective = {1, 1};
  lp.constraints = {{{1}, 1.0}};
  REQUIRE_THROWS_AS(solve(lp), ValidationError);
}
