#include "rlip/subaffine.hpp"

#include <fstream>
#include <set>

#include "rlip/lp.hpp"

namespace rlip {

using nlohmann::json;

SAInstance::SAInstance(std::size_t dim, std::vector<std::string> index, std::map<std::string, std::vector<SAPoint>> sets)
    : dim_(dim), index_(std::move(index)) {
  if (dim_ < 1) throw ValidationError("dim: must be >= 1");
  if (index_.empty()) throw ValidationError("index: must list at least one identifier");
  std::set<std::string> seen;
  for (const auto& id : index_) {
    if (!seen.insert(id).second) throw ValidationError("index: duplicate identifier '" + id + "'");
    auto it = sets.find(id);
    if (it == sets.end()) throw ValidationError("uncertainty." + id + ": missing uncertainty set");
    if (it->second.empty()) throw ValidationError("uncertainty." + id + ": empty uncertainty set");
    for (std::size_t p = 0; p < it->second.size(); ++p) {
      const auto& A = it->second[p].A;
      const std::string f = "uncertainty." + id + "[" + std::to_string(p) + "].A";
      if (A.empty()) throw ValidationError(f + ": empty vertex list");
      for (const auto& a : A)
        if (a.size() != dim_) throw ValidationError(f + ": vertex length does not match dim");
    }
    sets_.push_back(it->second);
  }
  for (const auto& [id, _] : sets)
    if (!seen.count(id)) throw ValidationError("uncertainty." + id + ": identifier not listed in index");
}

SAInstance subaffine_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("instance: expected a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) throw ParseError("dim: expected an integer");
  if (j["dim"].get<std::int64_t>() < 1) throw ValidationError("dim: must be >= 1");
  if (!j.contains("index") || !j["index"].is_array()) throw ParseError("index: expected an array of strings");
  std::vector<std::string> index;
  for (const auto& id : j["index"]) {
    if (!id.is_string()) throw ParseError("index: expected strings");
    index.push_back(id.get<std::string>());
  }
  if (!j.contains("uncertainty") || !j["uncertainty"].is_object()) throw ParseError("uncertainty: expected an object");
  std::map<std::string, std::vector<SAPoint>> sets;
  for (const auto& [id, list] : j["uncertainty"].items()) {
    const std::string base = "uncertainty." + id;
    if (!list.is_array()) throw ParseError(base + ": expected an array");
    std::vector<SAPoint> pts;
    for (std::size_t p = 0; p < list.size(); ++p) {
      const std::string f = base + "[" + std::to_string(p) + "]";
      const auto& e = list[p];
      if (!e.is_object() || !e.contains("A") || !e["A"].is_array() || !e.contains("b"))
        throw ParseError(f + ": expected {\"A\": [[...]], \"b\": ...}");
      SAPoint sp;
      for (std::size_t v = 0; v < e["A"].size(); ++v) {
        if (!e["A"][v].is_array()) throw ParseError(f + ".A[" + std::to_string(v) + "]: expected an array");
        Vec a;
        for (std::size_t i = 0; i < e["A"][v].size(); ++i)
          a.push_back(rational_from_json(e["A"][v][i], f + ".A[" + std::to_string(v) + "][" + std::to_string(i) + "]"));
        sp.A.push_back(std::move(a));
      }
      sp.b = rational_from_json(e["b"], f + ".b");
      pts.push_back(std::move(sp));
    }
    sets.emplace(id, std::move(pts));
  }
  return SAInstance(j["dim"].get<std::size_t>(), std::move(index), std::move(sets));
}

SAInstance load_subaffine(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return subaffine_from_json(j);
}

json subaffine_to_json(const SAInstance& sa) {
  json j;
  j["dim"] = sa.dim();
  j["index"] = sa.index();
  json unc = json::object();
  for (std::size_t t = 0; t < sa.num_indices(); ++t) {
    json list = json::array();
    for (const auto& sp : sa.set(t)) {
      json A = json::array();
      for (const auto& a : sp.A) {
        json v = json::array();
        for (const auto& q : a) v.push_back(rational_to_json(q));
        A.push_back(v);
      }
      list.push_back({{"A", A}, {"b", rational_to_json(sp.b)}});
    }
    unc[sa.index()[t]] = list;
  }
  j["uncertainty"] = unc;
  return j;
}

Instance expand_subaffine(const SAInstance& sa) {
  std::map<std::string, USet> sets;
  for (std::size_t t = 0; t < sa.num_indices(); ++t) {
    USet s;
    for (const auto& sp : sa.set(t))
      for (const auto& a : sp.A) s.points.push_back({a, sp.b});
    sets.emplace(sa.index()[t], std::move(s));
  }
  return Instance(sa.dim(), sa.index(), std::move(sets));
}

PrimalOutcome subaffine_primal(const SAInstance& sa, const Vec& c) {
  const std::size_t n = sa.dim();
  std::size_t m = 0;
  for (std::size_t t = 0; t < sa.num_indices(); ++t) m += sa.set(t).size();
  LinearProgram lp(n + m);
  for (std::size_t i = 0; i < n; ++i) lp.objective[i] = c[i];
  std::size_t z = n;
  for (std::size_t t = 0; t < sa.num_indices(); ++t)
    for (const auto& sp : sa.set(t)) {
      lp.bounds[z].upper = sp.b;
      for (const auto& a : sp.A) {
        Vec row(n + m, Rational(0));
        for (std::size_t i = 0; i < n; ++i) row[i] = a[i];
        row[z] = -1;
        lp.add(std::move(row), Relation::LE, Rational(0));
      }
      ++z;
    }
  const LpOutcome out = lp_solve(lp);
  PrimalOutcome p;
  if (out.infeasible()) {
    p.value = ExtendedValue::pos_inf();
    return p;
  }
  p.point.assign(out.point.begin(), out.point.begin() + static_cast<long>(n));
  if (out.unbounded()) {
    p.value = ExtendedValue::neg_inf();
    p.ray.assign(out.ray.begin(), out.ray.begin() + static_cast<long>(n));
  } else {
    p.value = ExtendedValue::finite(out.value);
  }
  return p;
}

UnionCone build_R(const SAInstance& sa, Variant which) {
  if (which != Variant::R1 && which != Variant::R2) throw std::invalid_argument("build_R takes R1 or R2");
  UnionCone u;
  u.dim = sa.dim() + 1;
  u.variant = which;
  auto push = [&](GenCone g, std::vector<GenOrigin> o) {
    add_generator(g, &o, unit_e(u.dim), GenOrigin{});
    for (const auto& p : u.pieces)
      if (p.generators == g.generators) return;
    u.pieces.push_back(std::move(g));
    u.origins.push_back(std::move(o));
  };
  for (std::size_t t = 0; t < sa.num_indices(); ++t) {
    GenCone all{u.dim, {}};
    std::vector<GenOrigin> all_o;
    for (std::size_t p = 0; p < sa.set(t).size(); ++p) {
      const SAPoint& sp = sa.set(t)[p];
      GenCone g{u.dim, {}};
      std::vector<GenOrigin> o;
      for (std::size_t v = 0; v < sp.A.size(); ++v) {
        Vec gen = sp.A[v];
        gen.push_back(sp.b);
        const GenOrigin origin{static_cast<long>(t), p, v};
        add_generator(g, &o, gen, origin);
        add_generator(all, &all_o, gen, origin);
      }
      if (which == Variant::R1) push(std::move(g), std::move(o));
    }
    if (which == Variant::R2) push(std::move(all), std::move(all_o));
  }
  return u;
}

namespace {

Vec vertex_point(const SAInstance& sa, const SATerm& x) {
  Vec v = sa.set(x.t)[x.p].A[x.vertex];
  v.push_back(sa.set(x.t)[x.p].b);
  return v;
}

void fill_k1_summary(const SAInstance& sa, SADualOutcome& d) {
  d.lambda_bar = 0;
  d.v_bar.clear();
  if (d.terms.empty()) return;
  Vec acc(sa.dim() + 1, Rational(0));
  for (const auto& x : d.terms) {
    d.lambda_bar += x.mu;
    acc = acc + scale(x.mu, vertex_point(sa, x));
  }
  d.v_bar = scale(1 / d.lambda_bar, acc);
}

std::vector<SATerm> to_terms(const std::vector<GenOrigin>& origins, const Vec& w) {
  std::vector<SATerm> out;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (sgn(w[i]) != 0 && origins[i].t >= 0)
      out.push_back({static_cast<std::size_t>(origins[i].t), origins[i].p, origins[i].vertex, w[i]});
  return out;
}

}  // namespace

SADualOutcome rsad_value(const SAInstance& sa, const Vec& c, int k) {
  if (k != 1 && k != 2) throw std::invalid_argument("sub-affine dual index must be 1 or 2");
  if (c.size() != sa.dim()) throw std::invalid_argument("objective length must equal dim");
  const UnionCone cone = build_R(sa, k == 1 ? Variant::R1 : Variant::R2);
  const ValueResult r = value_query(cone, c);
  SADualOutcome d;
  d.k = k;
  d.value = r.value;
  if (r.piece) {
    const auto& o = cone.origins[*r.piece];
    if (r.value.is_finite()) d.terms = to_terms(o, r.weights);
    if (r.value.is_pos_inf()) {
      d.feasible_terms = to_terms(o, r.weights);
      d.ray = to_terms(o, r.ray);
    }
  }
  if (k == 1) fill_k1_summary(sa, d);
  return d;
}

SADualOutcome rsad_direct(const SAInstance& sa, const Vec& c, int k) {
  if (k != 1 && k != 2) throw std::invalid_argument("sub-affine dual index must be 1 or 2");
  const std::size_t n = sa.dim();
  SADualOutcome best;
  best.k = k;
  best.value = ExtendedValue::neg_inf();
  // Groups of (t, p) constraints solved together.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> groups;
  for (std::size_t t = 0; t < sa.num_indices(); ++t) {
    if (k == 2) groups.emplace_back();
    for (std::size_t p = 0; p < sa.set(t).size(); ++p) {
      if (k == 1) groups.push_back({{t, p}});
      else groups.back().push_back({t, p});
    }
  }
  for (const auto& g : groups) {
    std::vector<SATerm> cols;
    for (const auto& [t, p] : g)
      for (std::size_t v = 0; v < sa.set(t)[p].A.size(); ++v) cols.push_back({t, p, v, Rational(0)});
    // Variables: one multiplier per (constraint, vertex).
    LinearProgram lp(cols.size());
    lp.sense = Sense::Max;
    for (auto& bd : lp.bounds) bd.lower = Rational(0);
    for (std::size_t j = 0; j < cols.size(); ++j) lp.objective[j] = -sa.set(cols[j].t)[cols[j].p].b;
    for (std::size_t i = 0; i < n; ++i) {
      Vec row(cols.size());
      for (std::size_t j = 0; j < cols.size(); ++j) row[j] = sa.set(cols[j].t)[cols[j].p].A[cols[j].vertex][i];
      lp.add(std::move(row), Relation::EQ, -c[i]);
    }
    const LpOutcome out = lp_solve(lp);
    if (out.infeasible()) continue;
    auto pick = [&](const Vec& w) {
      std::vector<SATerm> ts;
      for (std::size_t j = 0; j < cols.size(); ++j)
        if (sgn(w[j]) != 0) ts.push_back({cols[j].t, cols[j].p, cols[j].vertex, w[j]});
      return ts;
    };
    if (out.unbounded()) {
      best.value = ExtendedValue::pos_inf();
      best.terms.clear();
      best.feasible_terms = pick(out.point);
      best.ray = pick(out.ray);
      break;
    }
    const ExtendedValue v = ExtendedValue::finite(out.value);
    if (v > best.value) {
      best.value = v;
      best.terms = pick(out.point);
    }
  }
  if (k == 1) fill_k1_summary(sa, best);
  return best;
}

std::string check_rsad_certificate(const SAInstance& sa, const Vec& c, const SADualOutcome& d) {
  auto sums = [&](const std::vector<SATerm>& ts, Vec& a, Rational& b) -> std::string {
    a.assign(sa.dim(), Rational(0));
    b = 0;
    for (const auto& x : ts) {
      if (x.t >= sa.num_indices() || x.p >= sa.set(x.t).size() || x.vertex >= sa.set(x.t)[x.p].A.size())
        return "term refers to no vertex";
      if (sgn(x.mu) < 0) return "negative multiplier";
      a = a + scale(x.mu, sa.set(x.t)[x.p].A[x.vertex]);
      b += x.mu * sa.set(x.t)[x.p].b;
    }
    return {};
  };
  auto shape = [&](const std::vector<SATerm>& ts) {
    for (const auto& x : ts) {
      if (x.t != ts.front().t) return false;
      if (d.k == 1 && x.p != ts.front().p) return false;
    }
    return true;
  };
  Vec a;
  Rational b;
  if (d.value.is_finite()) {
    if (auto e = sums(d.terms, a, b); !e.empty()) return e;
    if (a != -c) return "multipliers do not reproduce -c";
    if (-b != d.value.value()) return "multipliers do not reproduce the value";
    if (!shape(d.terms)) return "certificate shape not allowed for this dual";
    if (d.k == 1 && !d.terms.empty()) {
      // c = -lambda v1 and value = -lambda v2
      Vec v1(d.v_bar.begin(), d.v_bar.end() - 1);
      if (scale(d.lambda_bar, v1) != -c || -d.lambda_bar * d.v_bar.back() != d.value.value())
        return "lambda-bar and v-bar do not reproduce the certificate";
    }
    return {};
  }
  if (d.value.is_pos_inf()) {
    if (auto e = sums(d.feasible_terms, a, b); !e.empty()) return e;
    if (a != -c) return "feasible certificate does not reproduce -c";
    if (auto e = sums(d.ray, a, b); !e.empty()) return e;
    if (!is_zero(a) || sgn(b) >= 0) return "ray does not improve";
    std::vector<SATerm> both = d.feasible_terms;
    both.insert(both.end(), d.ray.begin(), d.ray.end());
    if (!shape(both)) return "certificate shape not allowed for this dual";
  }
  return {};
}

FarkasReport subaffine_farkas(const SAInstance& sa, const Vec& c, const Rational& s, const std::string& variant) {
  if (c.size() != sa.dim()) throw std::invalid_argument("objective length must equal dim");
  FarkasReport r;
  r.variant = variant;
  r.c = c;
  r.s = s;
  r.feasible = !subaffine_primal(sa, Vec(sa.dim(), Rational(0))).value.is_pos_inf();
  const PrimalOutcome p = subaffine_primal(sa, c);
  r.alpha = p.value >= ExtendedValue::finite(s);
  r.alpha_point = p.point;

  const Instance expanded = expand_subaffine(sa);
  if (variant == "C2.2") {
    for (std::size_t t = 0; t < sa.num_indices(); ++t)
      if (sa.set(t).size() != 1) throw VariantMismatch("C2.2 needs one constraint per index");
    const UnionCone cone = build_cone(expanded, Variant::N6);
    Vec x = -c;
    x.push_back(-s);
    r.beta_member = member(cone, x);
    r.beta = r.beta_member.has_value();
    r.expected_equivalent = r.feasible;
  } else if (variant == "RSAP-I" || variant == "RSAP-II") {
    const int k = variant == "RSAP-I" ? 1 : 2;
    const SADualOutcome d = rsad_value(sa, c, k);
    if (d.value.is_pos_inf()) {
      r.beta = true;
    } else if (d.value.is_finite() && d.value.value() >= s) {
      r.beta = true;
    }
    r.expected_equivalent = r.feasible && union_convex_decide(build_R(sa, k == 1 ? Variant::R1 : Variant::R2)).convex;
  } else {
    throw VariantMismatch("unknown sub-affine Farkas variant '" + variant + "'");
  }
  r.consistent = (!r.beta || r.alpha) && (!r.expected_equivalent || r.alpha == r.beta);
  if (!r.feasible) r.note = "infeasible instance: the inequality side holds vacuously";
  return r;
}

SAInstance gen_random_subaffine(std::uint64_t seed, const SAGenBounds& bounds) {
  Rng rng(seed);
  const auto n = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(bounds.max_dim)));
  const auto T = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(bounds.max_T)));
  std::vector<std::string> index;
  std::map<std::string, std::vector<SAPoint>> sets;
  for (std::size_t t = 0; t < T; ++t) {
    std::vector<SAPoint> pts;
    const auto m = rng.uniform(1, static_cast<std::int64_t>(bounds.max_constraints));
    for (std::int64_t i = 0; i < m; ++i) {
      SAPoint sp;
      const auto v = rng.uniform(1, static_cast<std::int64_t>(bounds.max_vertices));
      for (std::int64_t j = 0; j < v; ++j) {
        Vec a(n);
        for (auto& x : a) x = rng.rational(bounds.coeff_range);
        sp.A.push_back(std::move(a));
      }
      sp.b = rng.rational(bounds.coeff_range);
      pts.push_back(std::move(sp));
    }
    index.push_back("t" + std::to_string(t + 1));
    sets.emplace(index.back(), std::move(pts));
  }
  return SAInstance(n, std::move(index), std::move(sets));
}

}  // namespace rlip
