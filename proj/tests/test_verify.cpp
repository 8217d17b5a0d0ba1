#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rlip/verify.hpp"

using namespace rlip;

static const std::string kData = RLIP_TEST_DATA;

namespace {

Vec v(std::initializer_list<long> xs) {
  Vec out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("theorem ids") {
  CHECK(theorem_variants("2.1") == std::vector<Variant>{Variant::N4});
  CHECK(theorem_variants("4.1:3") == std::vector<Variant>{Variant::N3});
  CHECK(theorem_variants("4.2:7") == std::vector<Variant>{Variant::N7});
  CHECK(theorem_variants("C2.4") == std::vector<Variant>{Variant::M1});
  CHECK(theorem_variants("C6.5").size() == 3);
  CHECK_THROWS(theorem_variants("9.9"));
}

TEST_CASE("non-convex N2 on FIX-B exhibits a gap") {
  const Instance b = load_instance(kData + "/fixB.json");
  const auto r = theorem_check(b, Variant::N2, sample_objectives(b));
  CHECK_FALSE(r.verdict.convex);
  REQUIRE(r.witness_row);
  CHECK(r.witness_row->c == v({-1, -1}));
  CHECK(r.witness_row->primal == ExtendedValue::finite(0));
  CHECK(r.witness_row->dual.is_neg_inf());
  CHECK(r.consistent);
}

TEST_CASE("convex cones close the gap") {
  const Instance a = load_instance(kData + "/fixA.json");
  const Instance b = load_instance(kData + "/fixB.json");
  const auto r6 = theorem_check(b, Variant::N6, sample_objectives(b));
  CHECK(r6.verdict.convex);
  CHECK(r6.consistent);
  for (const auto& row : r6.rows)
    if (!row.primal.is_neg_inf()) CHECK(row.primal == row.dual);
  const auto r1 = theorem_check(a, Variant::N1, sample_objectives(a));
  CHECK(r1.verdict.convex);
  CHECK(r1.consistent);
}

TEST_CASE("Farkas variants on fixtures") {
  const Instance a = load_instance(kData + "/fixA.json");
  const Instance b = load_instance(kData + "/fixB.json");
  auto f = farkas_check(a, "C6.6", v({-1}), Rational(-1));
  CHECK(f.alpha);
  CHECK(f.beta);
  CHECK(f.consistent);
  f = farkas_check(b, "C5.2", v({-1, -1}), Rational(0));
  CHECK(f.alpha);
  CHECK_FALSE(f.beta);
  CHECK_FALSE(f.expected_equivalent);
  CHECK(f.consistent);
  f = farkas_check(a, "P2.1", v({-1}), Rational(-2));
  CHECK(f.alpha);
  CHECK(f.beta);
  CHECK(f.consistent);
  CHECK_THROWS_AS(farkas_check(load_instance(kData + "/fixC.json"), "C6.6", v({-1}), Rational(0)), VariantMismatch);
}

TEST_CASE("certificate side implies inequality side on random data") {
  Rng rng(31);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance r = gen_random(seed, {.max_dim = 2, .max_T = 3, .max_points = 2, .coeff_range = 2});
    for (const auto& name : farkas_variants()) {
      Vec c(r.dim());
      for (auto& q : c) q = rng.rational(2);
      try {
        const auto f = farkas_check(r, name, c, rng.rational(3));
        CAPTURE(seed);
        CAPTURE(name);
        if (f.beta) CHECK(f.alpha);
        CHECK(f.consistent);
      } catch (const VariantMismatch&) {
      } catch (const NotSingleton&) {
      }
    }
  }
}

TEST_CASE("Slater conditions") {
  const Instance a = load_instance(kData + "/fixA.json");
  for (const char* cond : {"4.2", "4.3", "4.4", "4.5"}) CHECK(slater_check(a, cond).holds);
  const auto sa = slater_check(a, "4.5");
  REQUIRE_FALSE(sa.witnesses.empty());
  CHECK(sa.witnesses[0].point == v({0}));
  const Instance b = load_instance(kData + "/fixB.json");
  const auto sb = slater_check(b, "4.5");
  CHECK(sb.holds);
  REQUIRE_FALSE(sb.witnesses.empty());
  CHECK(sb.witnesses[0].point == v({-1, -1}));
  // x <= 0 together with -x <= 0 has no interior.
  const Instance flat = instance_from_json(nlohmann::json::parse(
      R"({"dim":1,"index":["t"],"uncertainty":{"t":{"convex_hull":false,"points":[{"a":[1],"b":0},{"a":[-1],"b":0}]}}})"));
  CHECK_FALSE(slater_check(flat, "4.5").holds);
  CHECK(slater_check(flat, "4.2").holds);
}

TEST_CASE("hypothesis report") {
  const Instance b = load_instance(kData + "/fixB.json");
  const auto hb = hypothesis_report(b);
  CHECK(hb.consistent);
  REQUIRE_FALSE(hb.items.empty());
  CHECK(hb.items[0].id == "4.1-i");
  CHECK(hb.items[0].status == "fails");
  const auto ha = hypothesis_report(load_instance(kData + "/fixA.json"));
  CHECK(ha.items[0].status == "holds");
  REQUIRE(ha.items[0].cone_convex);
  CHECK(*ha.items[0].cone_convex);
}
