#include "rlip/duals.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <set>

#include "rlip/lp.hpp"

namespace rlip {

Rational DualCertificate::lambda_total() const {
  Rational s = 0;
  for (const auto& t : terms) s += t.mu;
  return s;
}

std::optional<std::size_t> DualCertificate::index() const {
  if (terms.empty()) return std::nullopt;
  const std::size_t t = terms.front().ref.t;
  for (const auto& x : terms)
    if (x.ref.t != t) return std::nullopt;
  return t;
}

PrimalOutcome primal_value(const Instance& inst, const Vec& c) {
  if (c.size() != inst.dim()) throw std::invalid_argument("objective length must equal dim");
  LinearProgram lp(inst.dim());
  lp.objective = c;
  for (const auto& u : expand_constraints(inst)) lp.add(u.a, Relation::LE, u.b);
  const LpOutcome out = lp_solve(lp);
  PrimalOutcome p;
  if (out.infeasible()) {
    p.value = ExtendedValue::pos_inf();
  } else if (out.unbounded()) {
    p.value = ExtendedValue::neg_inf();
    p.point = out.point;
    p.ray = out.ray;
  } else {
    p.value = ExtendedValue::finite(out.value);
    p.point = out.point;
  }
  return p;
}

namespace {

void check_objective(const Instance& inst, const Vec& c) {
  if (c.size() != inst.dim()) throw std::invalid_argument("objective length must equal dim");
}

std::vector<CertTerm> terms_from(const std::vector<PointRef>& refs, const Vec& mu) {
  std::vector<CertTerm> out;
  for (std::size_t i = 0; i < refs.size(); ++i)
    if (sgn(mu[i]) != 0) out.push_back({refs[i], mu[i]});
  return out;
}

// max -sum mu b  s.t.  sum mu a = -c, mu >= 0 over the given points.
DualOutcome points_lp(const Instance& inst, const Vec& c, const std::vector<PointRef>& refs) {
  const std::size_t k = refs.size(), n = inst.dim();
  LinearProgram lp(k);
  lp.sense = Sense::Max;
  for (auto& bd : lp.bounds) bd.lower = Rational(0);
  for (std::size_t j = 0; j < k; ++j) lp.objective[j] = -inst.point(refs[j]).b;
  for (std::size_t i = 0; i < n; ++i) {
    Vec row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = inst.point(refs[j]).a[i];
    lp.add(std::move(row), Relation::EQ, -c[i]);
  }
  const LpOutcome out = lp_solve(lp);
  DualOutcome d;
  if (out.infeasible()) {
    d.value = ExtendedValue::neg_inf();
  } else if (out.unbounded()) {
    d.value = ExtendedValue::pos_inf();
    d.feasible_cert = DualCertificate{terms_from(refs, out.point)};
    d.ray = terms_from(refs, out.ray);
  } else {
    d.value = ExtendedValue::finite(out.value);
    d.cert = DualCertificate{terms_from(refs, out.point)};
  }
  return d;
}

// Same problem in (lambda, mu) form with sum mu = lambda, used for a
// polytopic set under the one-point dual.
DualOutcome hull_point_lp(const Instance& inst, const Vec& c, std::size_t t) {
  const auto& pts = inst.set(t).points;
  const std::size_t k = pts.size(), n = inst.dim();
  LinearProgram lp(k + 1);
  lp.sense = Sense::Max;
  for (auto& bd : lp.bounds) bd.lower = Rational(0);
  for (std::size_t j = 0; j < k; ++j) lp.objective[j] = -pts[j].b;
  for (std::size_t i = 0; i < n; ++i) {
    Vec row(k + 1, Rational(0));
    for (std::size_t j = 0; j < k; ++j) row[j] = pts[j].a[i];
    lp.add(std::move(row), Relation::EQ, -c[i]);
  }
  Vec sum(k + 1, Rational(1));
  sum[k] = -1;
  lp.add(std::move(sum), Relation::EQ, Rational(0));
  const LpOutcome out = lp_solve(lp);
  std::vector<PointRef> refs;
  for (std::size_t p = 0; p < k; ++p) refs.push_back({t, p});
  DualOutcome d;
  if (out.infeasible()) {
    d.value = ExtendedValue::neg_inf();
  } else if (out.unbounded()) {
    d.value = ExtendedValue::pos_inf();
    d.feasible_cert = DualCertificate{terms_from(refs, out.point)};
    d.ray = terms_from(refs, out.ray);
  } else {
    d.value = ExtendedValue::finite(out.value);
    d.cert = DualCertificate{terms_from(refs, out.point)};
  }
  return d;
}

// c = -lambda a with lambda >= 0, value -lambda b.
DualOutcome single_point(const Instance& inst, const Vec& c, PointRef r) {
  const UPoint& v = inst.point(r);
  DualOutcome d;
  d.value = ExtendedValue::neg_inf();
  if (is_zero(v.a)) {
    if (!is_zero(c)) return d;
    if (sgn(v.b) >= 0) {
      d.value = ExtendedValue::finite(0);
      d.cert = DualCertificate{};
    } else {
      d.value = ExtendedValue::pos_inf();
      d.feasible_cert = DualCertificate{};
      d.ray = {{r, Rational(1)}};
    }
    return d;
  }
  std::size_t i = 0;
  while (sgn(v.a[i]) == 0) ++i;
  const Rational lambda = -c[i] / v.a[i];
  if (sgn(lambda) < 0) return d;
  for (std::size_t j = 0; j < c.size(); ++j)
    if (c[j] != -lambda * v.a[j]) return d;
  d.value = ExtendedValue::finite(-lambda * v.b);
  d.cert = DualCertificate{};
  if (sgn(lambda) != 0) d.cert->terms.push_back({r, lambda});
  return d;
}

// Keeps the larger value; ties keep the earlier one.
void take_max(DualOutcome& best, DualOutcome cand) {
  if (cand.value > best.value) {
    const int k = best.k;
    const Route route = best.route;
    best = std::move(cand);
    best.k = k;
    best.route = route;
  }
}

DualOutcome cone_route(const Instance& inst, const Vec& c, int k, const Caps& caps, Variant v) {
  const UnionCone cone = build_cone(inst, v, caps);
  const ValueResult r = value_query(cone, c);
  DualOutcome d;
  d.k = k;
  d.route = Route::Cone;
  d.value = r.value;
  if (!r.piece) return d;
  const auto& origins = cone.origins[*r.piece];
  auto to_terms = [&](const Vec& w) {
    std::vector<CertTerm> out;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (sgn(w[i]) != 0 && origins[i].t >= 0)
        out.push_back({PointRef{static_cast<std::size_t>(origins[i].t), origins[i].p}, w[i]});
    return out;
  };
  if (r.value.is_finite()) {
    d.cert = DualCertificate{to_terms(r.weights)};
  } else if (r.value.is_pos_inf()) {
    d.feasible_cert = DualCertificate{to_terms(r.weights)};
    d.ray = to_terms(r.ray);
  }
  return d;
}

DualOutcome direct_route(const Instance& inst, const Vec& c, int k, const Caps& caps) {
  DualOutcome best;
  best.k = k;
  best.route = Route::Direct;
  best.value = ExtendedValue::neg_inf();
  switch (k) {
    case 1:
      for (std::size_t t = 0; t < inst.num_indices(); ++t) {
        if (inst.set(t).convex_hull) {
          take_max(best, hull_point_lp(inst, c, t));
        } else {
          for (std::size_t p = 0; p < inst.set(t).points.size(); ++p) take_max(best, single_point(inst, c, {t, p}));
        }
      }
      return best;
    case 2:
      for (std::size_t t = 0; t < inst.num_indices(); ++t) {
        std::vector<PointRef> refs;
        for (std::size_t p = 0; p < inst.set(t).points.size(); ++p) refs.push_back({t, p});
        take_max(best, points_lp(inst, c, refs));
      }
      return best;
    case 3:
      for_each_pinned_selection(inst, caps.selections, [&](const PinnedSelection& s) {
        take_max(best, points_lp(inst, c, pinned_points(inst, s)));
      });
      return best;
    case 6: {
      std::vector<PointRef> refs;
      for (std::size_t t = 0; t < inst.num_indices(); ++t)
        for (std::size_t p = 0; p < inst.set(t).points.size(); ++p) refs.push_back({t, p});
      take_max(best, points_lp(inst, c, refs));
      return best;
    }
    default: {
      DualOutcome d = cone_route(inst, c, k, caps, n_variant(k));
      d.route = Route::Direct;
      d.lambda_check = lambda_check(inst, c, k, d);
      return d;
    }
  }
}

bool structure_ok(const Instance& inst, int k, const std::vector<CertTerm>& terms) {
  if (terms.empty()) return true;
  switch (k) {
    case 1: {
      const PointRef r = terms.front().ref;
      bool same_point = true, same_t = true;
      for (const auto& x : terms) {
        if (!(x.ref == r)) same_point = false;
        if (x.ref.t != r.t) same_t = false;
      }
      return same_point || (same_t && inst.set(r.t).convex_hull);
    }
    case 2:
    case 4:
      for (const auto& x : terms)
        if (x.ref.t != terms.front().ref.t) return false;
      return true;
    case 3:
    case 5: {
      std::map<std::size_t, std::size_t> chosen;
      for (const auto& x : terms) {
        if (inst.set(x.ref.t).convex_hull) continue;
        auto [it, fresh] = chosen.emplace(x.ref.t, x.ref.p);
        if (!fresh && it->second != x.ref.p) return false;
      }
      return true;
    }
    default:
      return true;
  }
}

std::string check_terms(const Instance& inst, const std::vector<CertTerm>& terms, Vec& asum, Rational& bsum) {
  asum.assign(inst.dim(), Rational(0));
  bsum = 0;
  for (const auto& x : terms) {
    if (x.ref.t >= inst.num_indices() || x.ref.p >= inst.set(x.ref.t).points.size()) return "term refers to no listed point";
    if (sgn(x.mu) < 0) return "negative multiplier";
    const UPoint& u = inst.point(x.ref);
    asum = asum + scale(x.mu, u.a);
    bsum += x.mu * u.b;
  }
  return {};
}

}  // namespace

DualOutcome dual_value(const Instance& inst, const Vec& c, int k, Route route, const Caps& caps) {
  check_objective(inst, c);
  if (k < 1 || k > 9) throw std::invalid_argument("dual index must be in 1..9");
  if (route == Route::Cone) return cone_route(inst, c, k, caps, n_variant(k));
  return direct_route(inst, c, k, caps);
}

std::string check_dual_certificate(const Instance& inst, const Vec& c, const DualOutcome& d) {
  Vec asum;
  Rational bsum;
  if (d.value.is_finite()) {
    if (!d.cert) return "finite value without certificate";
    if (auto e = check_terms(inst, d.cert->terms, asum, bsum); !e.empty()) return e;
    if (asum != -c) return "multipliers do not reproduce -c";
    if (-bsum != d.value.value()) return "multipliers do not reproduce the value";
    if (!structure_ok(inst, d.k, d.cert->terms)) return "certificate shape not allowed for this dual";
    return {};
  }
  if (d.value.is_pos_inf()) {
    if (!d.feasible_cert) return "+inf value without a feasible certificate";
    if (auto e = check_terms(inst, d.feasible_cert->terms, asum, bsum); !e.empty()) return e;
    if (asum != -c) return "feasible certificate does not reproduce -c";
    if (auto e = check_terms(inst, d.ray, asum, bsum); !e.empty()) return e;
    if (!is_zero(asum)) return "ray changes the a-sum";
    if (sgn(bsum) >= 0) return "ray does not increase the value";
    std::vector<CertTerm> both = d.feasible_cert->terms;
    both.insert(both.end(), d.ray.begin(), d.ray.end());
    if (!structure_ok(inst, d.k, both)) return "certificate shape not allowed for this dual";
    return {};
  }
  return {};
}

namespace {

struct Group {
  Rational lambda;
  std::vector<UPoint> points;
};

// inf_x c.x + sum_g lambda_g max_{p in g} (p.a x - p.b)
ExtendedValue inner_value(const Vec& c, const std::vector<Group>& groups) {
  const std::size_t n = c.size();
  std::vector<const Group*> live;
  for (const auto& g : groups)
    if (sgn(g.lambda) != 0) live.push_back(&g);
  LinearProgram lp(n + live.size());
  for (std::size_t i = 0; i < n; ++i) lp.objective[i] = c[i];
  for (std::size_t g = 0; g < live.size(); ++g) {
    lp.objective[n + g] = live[g]->lambda;
    for (const auto& p : live[g]->points) {
      Vec row(n + live.size(), Rational(0));
      for (std::size_t i = 0; i < n; ++i) row[i] = p.a[i];
      row[n + g] = -1;
      lp.add(std::move(row), Relation::LE, p.b);
    }
  }
  const LpOutcome out = lp_solve(lp);
  if (out.unbounded()) return ExtendedValue::neg_inf();
  if (out.infeasible()) return ExtendedValue::pos_inf();
  return ExtendedValue::finite(out.value);
}

std::vector<UPoint> set_points(const Instance& inst, std::size_t t) { return inst.set(t).points; }

std::vector<UPoint> all_points(const Instance& inst) {
  std::vector<UPoint> out;
  for (std::size_t t = 0; t < inst.num_indices(); ++t)
    for (const auto& p : inst.set(t).points) out.push_back(p);
  return out;
}

UPoint barycenter(const Instance& inst, const std::vector<CertTerm>& terms) {
  UPoint u{Vec(inst.dim(), Rational(0)), Rational(0)};
  Rational total = 0;
  for (const auto& x : terms) {
    u.a = u.a + scale(x.mu, inst.point(x.ref).a);
    u.b += x.mu * inst.point(x.ref).b;
    total += x.mu;
  }
  u.a = scale(1 / total, u.a);
  u.b /= total;
  return u;
}

// u(T) for the certificate: the chosen point for point-list indices, the
// weighted barycenter for polytopic ones, the first listed point where the
// certificate is silent.
std::vector<UPoint> certificate_selection(const Instance& inst, const std::vector<CertTerm>& terms) {
  std::vector<UPoint> u;
  for (std::size_t t = 0; t < inst.num_indices(); ++t) {
    std::vector<CertTerm> at;
    for (const auto& x : terms)
      if (x.ref.t == t) at.push_back(x);
    u.push_back(at.empty() ? inst.set(t).points.front() : barycenter(inst, at));
  }
  return u;
}

std::vector<UPoint> selection_through(const Instance& inst, PointRef r) {
  std::vector<UPoint> u;
  for (std::size_t t = 0; t < inst.num_indices(); ++t) u.push_back(t == r.t ? inst.point(r) : inst.set(t).points.front());
  return u;
}

Rational grid_random(Rng& rng, const Rational& base) {
  Rational factor(rng.uniform(0, 12), 4);
  factor.canonicalize();
  const std::int64_t num = rng.uniform(0, 8);
  Rational shift(num, rng.uniform(1, 4));
  shift.canonicalize();
  return base * factor + shift;
}

// Multiplier families: one candidate multiplier vector, expanded to groups.
std::vector<Vec> scalar_grid(const Vec& star, Rng& rng) {
  std::vector<Vec> grid;
  grid.push_back(Vec(star.size(), Rational(0)));
  grid.push_back(scale(Rational(1, 2), star));
  grid.push_back(star);
  grid.push_back(scale(Rational(2), star));
  grid.push_back(star + Vec(star.size(), Rational(1)));
  for (int i = 0; i < 8; ++i) {
    Vec v(star.size());
    for (std::size_t j = 0; j < star.size(); ++j) v[j] = grid_random(rng, star[j]);
    grid.push_back(std::move(v));
  }
  return grid;
}

}  // namespace

LambdaCheck lambda_check(const Instance& inst, const Vec& c, int k, const DualOutcome& d, std::uint64_t seed) {
  LambdaCheck lc;
  Rng rng(seed + static_cast<std::uint64_t>(k));
  const std::size_t T = inst.num_indices();

  if (d.value.is_pos_inf()) {
    DualOutcome probe = d;
    probe.k = k;
    lc.message = check_dual_certificate(inst, c, probe);
    lc.passed = lc.message.empty();
    lc.at_star = ExtendedValue::pos_inf();
    return lc;
  }

  // Families of group lists, each parametrized by a multiplier vector.
  using Family = std::function<std::vector<Group>(const Vec&)>;
  std::vector<Family> families;
  Vec star;
  std::optional<std::size_t> star_family;
  const bool finite = d.value.is_finite();
  const std::vector<CertTerm> terms = finite ? d.cert->terms : std::vector<CertTerm>{};

  switch (k) {
    case 4: {
      for (std::size_t t = 0; t < T; ++t)
        families.push_back([&inst, t](const Vec& l) { return std::vector<Group>{{l[0], set_points(inst, t)}}; });
      star = {finite ? d.cert->lambda_total() : Rational(1)};
      if (finite) star_family = d.cert->index().value_or(0);
      break;
    }
    case 5: {
      const auto u = certificate_selection(inst, terms);
      families.push_back([u](const Vec& l) { return std::vector<Group>{{l[0], u}}; });
      std::size_t count = 0;
      for (const auto& s : enumerate_selections(inst, SIZE_MAX)) {
        if (++count > 16) break;
        std::vector<UPoint> v;
        for (std::size_t t = 0; t < T; ++t) v.push_back(inst.set(t).points[s.choice[t]]);
        families.push_back([v](const Vec& l) { return std::vector<Group>{{l[0], v}}; });
      }
      star = {finite ? d.cert->lambda_total() : Rational(1)};
      if (finite) star_family = 0;
      break;
    }
    case 7: {
      const auto pts = all_points(inst);
      families.push_back([pts](const Vec& l) { return std::vector<Group>{{l[0], pts}}; });
      star = {finite ? d.cert->lambda_total() : Rational(1)};
      if (finite) star_family = 0;
      break;
    }
    case 8: {
      families.push_back([&inst, T](const Vec& l) {
        std::vector<Group> gs;
        for (std::size_t t = 0; t < T; ++t) gs.push_back({l[t], set_points(inst, t)});
        return gs;
      });
      star.assign(T, finite ? Rational(0) : Rational(1));
      for (const auto& x : terms) star[x.ref.t] += x.mu;
      if (finite) star_family = 0;
      break;
    }
    case 9: {
      std::vector<std::vector<UPoint>> sels;
      if (finite) {
        for (const auto& x : terms) {
          sels.push_back(selection_through(inst, x.ref));
          star.push_back(x.mu);
        }
        star_family = 0;
      } else {
        for (std::size_t t = 0; t < T; ++t)
          for (std::size_t p = 0; p < inst.set(t).points.size(); ++p) {
            sels.push_back(selection_through(inst, {t, p}));
            star.push_back(Rational(1));
          }
      }
      families.push_back([sels](const Vec& l) {
        std::vector<Group> gs;
        for (std::size_t i = 0; i < sels.size(); ++i) gs.push_back({l[i], sels[i]});
        return gs;
      });
      break;
    }
    default:
      throw std::invalid_argument("lambda check applies to k in {4, 5, 7, 8, 9}");
  }

  lc.lambda_star = star;
  if (star_family) {
    lc.at_star = inner_value(c, families[*star_family](star));
    if (lc.at_star != d.value) {
      lc.passed = false;
      lc.message = "inner value at lambda* is " + to_string(lc.at_star) + ", expected " + to_string(d.value);
    }
  } else {
    lc.at_star = ExtendedValue::neg_inf();
  }
  const auto grid = scalar_grid(star, rng);
  for (const auto& f : families)
    for (const auto& l : grid) {
      const ExtendedValue g = inner_value(c, f(l));
      lc.grid.push_back(g);
      if (g > d.value && lc.passed) {
        lc.passed = false;
        lc.message = "grid value " + to_string(g) + " exceeds " + to_string(d.value);
      }
    }
  return lc;
}

bool DiagramReport::all_hold() const {
  for (const auto& e : edges)
    if (!e.holds) return false;
  return true;
}

DiagramReport diagram_check(const Instance& inst, const Vec& c, const Caps& caps) {
  DiagramReport r;
  for (int k = 1; k <= 9; ++k) r.duals[k - 1] = dual_value(inst, c, k, Route::Cone, caps).value;
  r.primal = primal_value(inst, c).value;
  auto val = [&](const std::string& s) { return s == "P" ? r.primal : r.duals[std::stoi(s) - 1]; };
  const std::vector<std::pair<std::string, std::string>> edges = {
      {"1", "2"}, {"1", "3"}, {"1", "4"}, {"1", "5"}, {"2", "6"}, {"3", "6"}, {"4", "7"}, {"5", "7"},
      {"6", "8"}, {"6", "9"}, {"8", "P"}, {"9", "P"}, {"7", "P"}, {"6", "P"}, {"1", "P"}, {"2", "P"},
      {"3", "P"}, {"4", "P"}, {"5", "P"}};
  for (const auto& [a, b] : edges) r.edges.push_back({a, b, val(a) <= val(b)});
  return r;
}

DualOutcome lip_dual_value(const Instance& inst, const Vec& c, int j, const Caps& caps) {
  check_objective(inst, c);
  if (!inst.all_singleton()) throw NotSingleton();
  switch (j) {
    case 1:
      return dual_value(inst, c, 1, Route::Cone, caps);
    case 2: {
      DualOutcome d = cone_route(inst, c, 6, caps, Variant::E2);
      return d;
    }
    case 3: {
      DualOutcome d = cone_route(inst, c, 7, caps, Variant::E3);
      d.lambda_check = lambda_check(inst, c, 7, d);
      return d;
    }
    default:
      throw std::invalid_argument("classical dual index must be in 1..3");
  }
}

CollapseReport collapse_check(const Instance& inst, const Vec& c, const Caps& caps) {
  CollapseReport r;
  for (int j = 1; j <= 3; ++j) r.lid[j - 1] = lip_dual_value(inst, c, j, caps).value;
  for (int k = 1; k <= 9; ++k) r.robust[k - 1] = dual_value(inst, c, k, Route::Cone, caps).value;
  const int group[9] = {0, 0, 1, 0, 2, 1, 2, 1, 2};
  for (int k = 0; k < 9; ++k)
    if (r.robust[k] != r.lid[group[k]]) r.holds = false;
  return r;
}

}  // namespace rlip
