#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "rlip/model.hpp"

using namespace rlip;
using nlohmann::json;

static const std::string kData = RLIP_TEST_DATA;

TEST_CASE("rationals parse from integers, fractions and decimals") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-2/4") == Rational(-1, 2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-1.5") == Rational(-3, 2));
  CHECK_THROWS_AS(parse_rational("1e3"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK(parse_vector("-1,1/2,0.25") == Vec{Rational(-1), Rational(1, 2), Rational(1, 4)});
}

TEST_CASE("fixtures load") {
  const Instance a = load_instance(kData + "/fixA.json");
  CHECK(a.dim() == 1);
  CHECK(a.num_indices() == 1);
  const Instance b = load_instance(kData + "/fixB.json");
  const auto pts = expand_constraints(b);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].a == Vec{Rational(1), Rational(0)});
  CHECK(pts[1].a == Vec{Rational(0), Rational(1)});
  CHECK(expand_constraints(a).size() == 1);
}

TEST_CASE("validation names the offending field") {
  auto bad = [](const char* text) -> std::string {
    try {
      instance_from_json(json::parse(text));
    } catch (const std::exception& e) {
      return e.what();
    }
    return "";
  };
  CHECK(bad(R"({"dim":0,"index":["t"],"uncertainty":{"t":{"convex_hull":false,"points":[{"a":[],"b":1}]}}})")
            .find("dim") != std::string::npos);
  CHECK(bad(R"({"dim":2,"index":["t"],"uncertainty":{"t":{"convex_hull":false,"points":[{"a":[1],"b":1}]}}})")
            .find("uncertainty.t") != std::string::npos);
  CHECK(bad(R"({"dim":1,"index":["t"],"uncertainty":{"t":{"convex_hull":false,"points":[]}}})")
            .find("uncertainty.t") != std::string::npos);
  CHECK(bad(R"({"dim":1,"index":["t","u"],"uncertainty":{"t":{"convex_hull":false,"points":[{"a":[1],"b":1}]}}})")
            .find("uncertainty.u") != std::string::npos);
  CHECK(bad(R"({"dim":1,"index":["t"],"uncertainty":{"t":{"convex_hull":false,"points":[{"a":[0.5],"b":1}]}}})") != "");
}

TEST_CASE("serialization round trips and is canonical") {
  const Instance b = load_instance(kData + "/fixB.json");
  const std::string s = serialize_instance(b);
  CHECK(instance_from_json(json::parse(s)) == b);
  CHECK(serialize_instance(instance_from_json(json::parse(s))) == s);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance r = gen_random(seed, {});
    const std::string t = serialize_instance(r);
    CHECK(instance_from_json(json::parse(t)) == r);
    CHECK(serialize_instance(instance_from_json(json::parse(t))) == t);
  }
}

TEST_CASE("selection enumeration") {
  const Instance b = load_instance(kData + "/fixB.json");
  CHECK(enumerate_selections(b, 10).size() == 1);
  CHECK_THROWS_AS(enumerate_selections(b, 0), CapExceeded);
  const Instance c = load_instance(kData + "/fixC.json");
  std::vector<Selection> all;
  for (const auto& s : enumerate_selections(c, 10)) all.push_back(s);
  CHECK(all.size() == 2);
}

TEST_CASE("selection count equals the product of set sizes on random instances") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance r = gen_random(seed, {.max_dim = 3, .max_T = 3, .max_points = 3});
    std::size_t product = 1;
    for (std::size_t t = 0; t < r.num_indices(); ++t) product *= r.set(t).points.size();
    CHECK(selection_count(r) == product);
    std::set<std::vector<std::size_t>> distinct;
    for (const auto& s : enumerate_selections(r, 4096)) distinct.insert(s.choice);
    CHECK(distinct.size() == product);
  }
}

TEST_CASE("generator is deterministic and respects bounds") {
  GenBounds g{.max_dim = 4, .max_T = 4, .max_points = 4, .coeff_range = 5};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance a = gen_random(seed, g);
    CHECK(a == gen_random(seed, g));
    CHECK(a.dim() <= 4);
    CHECK(a.num_indices() <= 4);
    for (std::size_t t = 0; t < a.num_indices(); ++t) CHECK(a.set(t).points.size() <= 4);
  }
}
