#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "rlip/lp.hpp"

using namespace rlip;

namespace {

LinearProgram random_lp(Rng& rng) {
  const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
  const auto m = static_cast<std::size_t>(rng.uniform(0, 6));
  LinearProgram lp(n);
  lp.sense = rng.uniform(0, 1) ? Sense::Min : Sense::Max;
  for (auto& c : lp.objective) c = rng.rational(3);
  for (std::size_t i = 0; i < m; ++i) {
    Vec row(n);
    for (auto& x : row) x = rng.rational(3);
    const auto r = rng.uniform(0, 5);
    lp.add(row, r < 4 ? Relation::LE : (r == 4 ? Relation::GE : Relation::EQ), rng.rational(4));
  }
  for (auto& b : lp.bounds) {
    if (rng.uniform(0, 3) == 0) b.lower = rng.rational(2);
    if (rng.uniform(0, 5) == 0) b.upper = rng.rational(3);
  }
  return lp;
}

}  // namespace

TEST_CASE("small fixed programs") {
  LinearProgram lp(1);
  lp.objective = {Rational(-1)};
  lp.add({Rational(1)}, Relation::LE, Rational(1));
  auto out = lp_solve(lp);
  REQUIRE(out.optimal());
  CHECK(out.value == -1);
  CHECK(out.point == Vec{Rational(1)});
  CHECK(check_certificate(lp, out) == "");

  lp.objective = {Rational(1)};
  out = lp_solve(lp);
  REQUIRE(out.unbounded());
  CHECK(out.ray == Vec{Rational(-1)});
  CHECK(check_certificate(lp, out) == "");

  lp.add({Rational(-1)}, Relation::LE, Rational(-2));
  out = lp_solve(lp);
  REQUIRE(out.infeasible());
  CHECK(check_certificate(lp, out) == "");
}

TEST_CASE("feasibility and strict feasibility") {
  const std::vector<LinearConstraint> b = {{{Rational(1), Rational(0)}, Relation::LE, Rational(0)},
                                           {{Rational(0), Rational(1)}, Relation::LE, Rational(0)}};
  const auto f = feasible(2, b);
  CHECK(f.feasible);
  const auto s = strict_feasible(2, b);
  REQUIRE(s);
  CHECK(s->point == Vec{Rational(-1), Rational(-1)});
  CHECK(s->slack == 1);
  const std::vector<LinearConstraint> flat = {{{Rational(1)}, Relation::LE, Rational(0)},
                                              {{Rational(-1)}, Relation::LE, Rational(0)}};
  CHECK(feasible(1, flat).feasible);
  CHECK_FALSE(strict_feasible(1, flat));
}

TEST_CASE("simplex agrees with brute-force face enumeration") {
  Rng rng(2024);
  int optimal = 0, unbounded = 0, infeasible = 0;
  for (int i = 0; i < 300; ++i) {
    const LinearProgram lp = random_lp(rng);
    const auto out = lp_solve(lp);
    const auto ref = oracle::brute_lp(lp);
    CAPTURE(i);
    CHECK(check_certificate(lp, out) == "");
    switch (ref.kind) {
      case oracle::LpAnswer::Kind::Optimal:
        ++optimal;
        REQUIRE(out.optimal());
        CHECK(out.value == ref.value);
        break;
      case oracle::LpAnswer::Kind::Unbounded:
        ++unbounded;
        CHECK(out.unbounded());
        break;
      case oracle::LpAnswer::Kind::Infeasible:
        ++infeasible;
        CHECK(out.infeasible());
        break;
    }
  }
  // The generator should exercise all three outcomes.
  CHECK(optimal > 0);
  CHECK(unbounded > 0);
  CHECK(infeasible > 0);
}

TEST_CASE("optimal duals satisfy complementary slackness") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const LinearProgram lp = random_lp(rng);
    const auto out = lp_solve(lp);
    if (!out.optimal()) continue;
    for (std::size_t r = 0; r < lp.constraints.size(); ++r) {
      const auto& c = lp.constraints[r];
      if (c.rel == Relation::EQ) continue;
      if (dot(c.row, out.point) != c.rhs) CHECK(sgn(out.duals[r]) == 0);
    }
  }
}
