#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "rlip/duals.hpp"

using namespace rlip;

static const std::string kData = RLIP_TEST_DATA;

namespace {

Vec v(std::initializer_list<long> xs) {
  Vec out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

const GenBounds kSmall{.max_dim = 2, .max_T = 3, .max_points = 2, .coeff_range = 2};

}  // namespace

TEST_CASE("primal on fixtures") {
  const Instance a = load_instance(kData + "/fixA.json");
  const Instance b = load_instance(kData + "/fixB.json");
  auto p = primal_value(a, v({-1}));
  CHECK(p.value == ExtendedValue::finite(-1));
  CHECK(p.point == v({1}));
  CHECK(primal_value(a, v({1})).value.is_neg_inf());
  p = primal_value(b, v({-1, -1}));
  CHECK(p.value == ExtendedValue::finite(0));
  CHECK(p.point == v({0, 0}));
}

TEST_CASE("FIX-A: all nine duals equal the primal") {
  const Instance a = load_instance(kData + "/fixA.json");
  for (int k = 1; k <= 9; ++k) {
    for (Route r : {Route::Cone, Route::Direct}) {
      const auto d = dual_value(a, v({-1}), k, r);
      CAPTURE(k);
      CHECK(d.value == ExtendedValue::finite(-1));
      CHECK(check_dual_certificate(a, v({-1}), d) == "");
    }
  }
  const auto d1 = dual_value(a, v({-1}), 1, Route::Cone);
  REQUIRE(d1.cert);
  CHECK(d1.cert->lambda_total() == 1);
  const auto diag = diagram_check(a, v({-1}));
  CHECK(diag.all_hold());
}

TEST_CASE("FIX-B: values along the diagram") {
  const Instance b = load_instance(kData + "/fixB.json");
  const Vec c = v({-1, -1});
  for (int k : {1, 2, 4}) CHECK(dual_value(b, c, k, Route::Cone).value.is_neg_inf());
  // One selection with both multipliers: the pinned-selection duals see
  // cone{(1,0,0),(0,1,0),e} and reach 0.
  for (int k : {3, 5, 6, 7, 8, 9}) {
    const auto d = dual_value(b, c, k, Route::Cone);
    CAPTURE(k);
    CHECK(d.value == ExtendedValue::finite(0));
    REQUIRE(d.cert);
    CHECK(check_dual_certificate(b, c, d) == "");
  }
  const auto d6 = dual_value(b, c, 6, Route::Direct);
  REQUIRE(d6.cert);
  REQUIRE(d6.cert->terms.size() == 2);
  CHECK(d6.cert->terms[0].mu == 1);
  CHECK(d6.cert->terms[1].mu == 1);
  const auto diag = diagram_check(b, c);
  CHECK(diag.all_hold());
  CHECK(diag.primal == ExtendedValue::finite(0));
}

TEST_CASE("weak duality against a brute-force primal") {
  Rng rng(11);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance r = gen_random(seed, kSmall);
    Vec c(r.dim());
    for (auto& q : c) q = rng.rational(2);
    const ExtendedValue p = oracle::primal(r, c);
    CHECK(primal_value(r, c).value == p);
    for (int k = 1; k <= 9; ++k) {
      const auto d = dual_value(r, c, k, Route::Cone);
      CAPTURE(seed);
      CAPTURE(k);
      CHECK(d.value <= p);
      CHECK(check_dual_certificate(r, c, d) == "");
    }
  }
}

TEST_CASE("k = 6 equals a brute-force value over all points") {
  Rng rng(12);
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    const Instance r = gen_random(seed, kSmall);
    Vec c(r.dim());
    for (auto& q : c) q = rng.rational(2);
    auto gens = oracle::lifted(expand_constraints(r));
    gens.push_back(oracle::e_vec(r.dim() + 1));
    const auto ref = oracle::to_extended(oracle::cone_value(gens, c));
    CAPTURE(seed);
    CHECK(dual_value(r, c, 6, Route::Cone).value == ref);
    CHECK(dual_value(r, c, 6, Route::Direct).value == ref);
  }
}

TEST_CASE("k = 2 equals a brute-force maximum over indices") {
  Rng rng(13);
  for (std::uint64_t seed = 200; seed < 240; ++seed) {
    const Instance r = gen_random(seed, kSmall);
    Vec c(r.dim());
    for (auto& q : c) q = rng.rational(2);
    ExtendedValue best = ExtendedValue::neg_inf();
    for (std::size_t t = 0; t < r.num_indices(); ++t) {
      auto gens = oracle::lifted(r.set(t).points);
      gens.push_back(oracle::e_vec(r.dim() + 1));
      best = std::max(best, oracle::to_extended(oracle::cone_value(gens, c)));
    }
    CAPTURE(seed);
    CHECK(dual_value(r, c, 2, Route::Cone).value == best);
    CHECK(dual_value(r, c, 2, Route::Direct).value == best);
  }
}

TEST_CASE("routes agree and lambda checks pass on random instances") {
  Rng rng(14);
  for (std::uint64_t seed = 300; seed < 340; ++seed) {
    const Instance r = gen_random(seed, kSmall);
    Vec c(r.dim());
    for (auto& q : c) q = rng.rational(2);
    for (int k = 1; k <= 9; ++k) {
      const auto a = dual_value(r, c, k, Route::Cone);
      const auto b = dual_value(r, c, k, Route::Direct);
      CAPTURE(seed);
      CAPTURE(k);
      CHECK(a.value == b.value);
      if (b.lambda_check) CHECK(b.lambda_check->passed);
    }
  }
}

TEST_CASE("classical duals on singleton instances") {
  const Instance a = load_instance(kData + "/fixA.json");
  for (int j = 1; j <= 3; ++j) CHECK(lip_dual_value(a, v({-1}), j).value == ExtendedValue::finite(-1));
  const auto col = collapse_check(a, v({-1}));
  CHECK(col.holds);
  const Instance b = load_instance(kData + "/fixB.json");
  const auto cb = collapse_check(b, v({-1, -1}));
  CHECK(cb.holds);
  CHECK(cb.lid[0].is_neg_inf());
  CHECK(cb.lid[1] == ExtendedValue::finite(0));
  CHECK(cb.lid[2] == ExtendedValue::finite(0));
}
