#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "rlip/dd.hpp"

using namespace rlip;

namespace {

Vec v(std::initializer_list<long> xs) {
  Vec out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

bool same_set(std::vector<Vec> a, std::vector<Vec> b) {
  auto key = [](const Vec& x) { return to_string(x); };
  auto cmp = [&](const Vec& x, const Vec& y) { return key(x) < key(y); };
  std::sort(a.begin(), a.end(), cmp);
  std::sort(b.begin(), b.end(), cmp);
  return a == b;
}

GenCone random_cone(Rng& rng) {
  GenCone g;
  g.dim = static_cast<std::size_t>(rng.uniform(1, 5));
  const auto m = rng.uniform(1, 8);
  for (std::int64_t i = 0; i < m; ++i) {
    Vec x(g.dim);
    for (auto& q : x) q = rng.uniform(-3, 3);
    g.generators.push_back(x);
  }
  return g;
}

}  // namespace

TEST_CASE("known facet descriptions") {
  const auto h = to_halfspaces({2, {v({1, 0}), v({1, 1})}});
  CHECK(h.equalities.empty());
  CHECK(same_set(h.normals, {v({0, 1}), v({1, -1})}));

  const auto orthant = to_halfspaces({2, {v({1, 0}), v({0, 1})}});
  CHECK(same_set(orthant.normals, {v({0, 1}), v({1, 0})}));

  const auto ray = to_halfspaces({2, {v({0, 1})}});
  CHECK(ray.contains(v({0, 5})));
  CHECK_FALSE(ray.contains(v({1, 5})));
  CHECK_FALSE(ray.contains(v({0, -1})));
}

TEST_CASE("halfspace to generators on the plane") {
  HalfspaceCone h{2, {v({0, 1})}, {}};
  const auto g = to_generators(h);
  CHECK(same_set(g.generators, {v({1, 0}), v({-1, 0}), v({0, 1})}));
}

TEST_CASE("dimension limit") {
  CHECK_THROWS_AS(to_halfspaces({9, {Vec(9, Rational(1))}}), DimensionLimit);
}

TEST_CASE("round trip preserves the cone (brute-force membership oracle)") {
  Rng rng(99);
  for (int i = 0; i < 100; ++i) {
    const GenCone g = random_cone(rng);
    const HalfspaceCone h = to_halfspaces(g);
    const GenCone back = to_generators(h);
    CAPTURE(i);
    for (const auto& x : g.generators) CHECK(h.contains(x));
    for (const auto& x : back.generators) CHECK(oracle::in_cone(g.generators, x));
    for (const auto& x : g.generators) CHECK(oracle::in_cone(back.generators, x));
    // Random probes: halfspace test agrees with the Caratheodory oracle.
    for (int p = 0; p < 10; ++p) {
      Vec x(g.dim);
      for (auto& q : x) q = rng.uniform(-3, 3);
      CHECK(h.contains(x) == oracle::in_cone(g.generators, x));
    }
  }
}

TEST_CASE("span basis spans exactly") {
  const auto b = span_basis({v({1, 2, 3}), v({2, 4, 6}), v({0, 1, 0})}, 3);
  CHECK(b.size() == 2);
}
