#include "rlip/verify.hpp"

#include <set>

#include "rlip/lp.hpp"

namespace rlip {

std::vector<Vec> sample_objectives(const Instance& inst, std::size_t count, std::uint64_t seed) {
  const std::size_t n = inst.dim();
  std::vector<Vec> out;
  std::set<Vec> seen;
  auto push = [&](Vec c) {
    if (out.size() < count && seen.insert(c).second) out.push_back(std::move(c));
  };
  for (std::size_t t = 0; t < inst.num_indices(); ++t)
    for (const auto& p : inst.set(t).points) push(-p.a);
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n, Rational(0));
    e[i] = 1;
    push(e);
    push(-e);
  }
  Rng rng(seed);
  for (int guard = 0; out.size() < count && guard < 1000; ++guard) {
    Vec c(n);
    for (auto& x : c) x = rng.rational(4);
    push(std::move(c));
  }
  return out;
}

std::vector<Variant> theorem_variants(const std::string& id) {
  auto suffix = [&](const std::string& prefix) -> std::optional<int> {
    if (id.rfind(prefix, 0) != 0 || id.size() != prefix.size() + 1) return std::nullopt;
    const char ch = id.back();
    if (ch < '0' || ch > '9') return std::nullopt;
    return ch - '0';
  };
  if (id == "2.1") return {Variant::N4};
  if (id == "C2.4") return {Variant::M1};
  if (id == "C6.5") return {Variant::E1, Variant::E2, Variant::E3};
  if (auto i = suffix("4.1:"); i && *i >= 1 && *i <= 5) return {n_variant(*i)};
  if (auto i = suffix("4.2:"); i && (*i == 6 || *i == 7)) return {n_variant(*i)};
  if (auto j = suffix("C6.5:"); j && *j >= 1 && *j <= 3) return {static_cast<Variant>(static_cast<int>(Variant::E1) + *j - 1)};
  throw std::invalid_argument("unknown theorem id '" + id + "'");
}

namespace {

bool instance_feasible(const Instance& inst) {
  return !primal_value(inst, Vec(inst.dim(), Rational(0))).value.is_pos_inf();
}

int paired_dual(Variant v) {
  switch (v) {
    case Variant::M1: return 6;
    case Variant::E1: return 11;
    case Variant::E2: return 12;
    case Variant::E3: return 13;
    case Variant::R1:
    case Variant::R2: throw std::invalid_argument("sub-affine cones are checked by the sub-affine module");
    default: return static_cast<int>(v) + 1;
  }
}

DualOutcome evaluate_dual(const Instance& inst, const Vec& c, int dual, const Caps& caps) {
  if (dual > 10) return lip_dual_value(inst, c, dual - 10, caps);
  return dual_value(inst, c, dual, Route::Cone, caps);
}

ObjectiveRow make_row(const Instance& inst, const Vec& c, int dual, const Caps& caps) {
  ObjectiveRow row;
  row.c = c;
  row.primal = primal_value(inst, c).value;
  const DualOutcome d = evaluate_dual(inst, c, dual, caps);
  row.dual = d.value;
  row.gap = row.dual < row.primal;
  if (row.dual.is_finite()) {
    const std::string e = check_dual_certificate(inst, c, d);
    row.attained = e.empty();
    if (!e.empty()) {
      row.ok = false;
      row.note = "certificate: " + e;
    }
  }
  if (row.primal < row.dual) {
    row.ok = false;
    row.note = "weak duality violated";
  }
  return row;
}

}  // namespace

TheoremReport theorem_check(const Instance& inst, Variant v, const std::vector<Vec>& samples, const Caps& caps) {
  TheoremReport rep;
  rep.theorem = to_string(v);
  rep.variant = v;
  rep.dual = paired_dual(v);
  const UnionCone cone = build_cone(inst, v, caps);
  rep.verdict = union_convex_decide(cone, caps);
  if (rep.verdict.witness) {
    const std::string e = check_witness(cone.all_generators(), cone, *rep.verdict.witness);
    if (!e.empty()) {
      rep.consistent = false;
      rep.note = "witness does not verify: " + e;
    }
  }
  rep.feasible = instance_feasible(inst);
  if (!rep.feasible) rep.note = "infeasible instance: strong duality claims are vacuous; only weak duality is checked";

  for (const auto& c : samples) {
    ObjectiveRow row = make_row(inst, c, rep.dual, caps);
    if (rep.verdict.convex && rep.feasible) {
      if (row.primal != row.dual) {
        row.ok = false;
        row.note = "convex cone but primal != dual";
      } else if (row.dual.is_finite() && !row.attained) {
        row.ok = false;
        if (row.note.empty()) row.note = "dual value not attained";
      }
    }
    if (!row.ok) rep.consistent = false;
    rep.rows.push_back(std::move(row));
  }

  if (!rep.verdict.convex && rep.verdict.witness && rep.feasible) {
    const Vec& w = rep.verdict.witness->point;
    const std::size_t n = inst.dim();
    const Vec cw = -Vec(w.begin(), w.begin() + static_cast<long>(n));
    const Rational rw = -w[n];
    ObjectiveRow row = make_row(inst, cw, rep.dual, caps);
    const ExtendedValue level = ExtendedValue::finite(rw);
    if (!(row.primal >= level)) {
      row.ok = false;
      row.note = "primal below the witness level";
    } else if (!(row.dual < level)) {
      row.ok = false;
      row.note = "dual reaches the witness level";
    } else {
      row.gap = true;
    }
    if (!row.ok) rep.consistent = false;
    rep.witness_level = rw;
    rep.witness_row = std::move(row);
  }
  return rep;
}

const std::vector<std::string>& farkas_variants() {
  static const std::vector<std::string> v = {"P2.1", "C2.1", "C2.2", "C5.1", "C5.2", "C5.3", "C5.4", "C6.6", "C6.7"};
  return v;
}

namespace {

// Certificate reaching level s from a +inf outcome: feasible + tau * ray.
DualCertificate lift_to_level(const Instance& inst, const DualOutcome& d, const Rational& s) {
  Rational base = 0, gain = 0;
  for (const auto& x : d.feasible_cert->terms) base -= x.mu * inst.point(x.ref).b;
  for (const auto& x : d.ray) gain -= x.mu * inst.point(x.ref).b;
  Rational tau = (s - base) / gain;
  if (sgn(tau) < 0) tau = 0;
  DualCertificate cert = *d.feasible_cert;
  for (const auto& x : d.ray) {
    bool merged = false;
    for (auto& y : cert.terms)
      if (y.ref == x.ref) {
        y.mu += tau * x.mu;
        merged = true;
      }
    if (!merged && sgn(tau) != 0) cert.terms.push_back({x.ref, tau * x.mu});
  }
  return cert;
}

}  // namespace

FarkasReport farkas_check(const Instance& inst, const std::string& variant, const Vec& c, const Rational& s,
                          const Caps& caps) {
  if (c.size() != inst.dim()) throw std::invalid_argument("objective length must equal dim");
  FarkasReport r;
  r.variant = variant;
  r.c = c;
  r.s = s;
  r.feasible = instance_feasible(inst);
  const PrimalOutcome p = primal_value(inst, c);
  r.alpha = p.value >= ExtendedValue::finite(s);
  r.alpha_point = p.point;

  std::optional<Variant> member_cone;
  int dual = 0;
  Variant cone_variant = Variant::N6;
  if (variant == "P2.1" || variant == "C2.1") {
    member_cone = cone_variant = Variant::M1;
  } else if (variant == "C2.2") {
    if (!inst.all_singleton()) throw VariantMismatch("C2.2 needs one point per index");
    member_cone = cone_variant = Variant::E2;
  } else if (variant.size() == 4 && variant.rfind("C5.", 0) == 0 && variant[3] >= '1' && variant[3] <= '4') {
    dual = variant[3] - '0';
    cone_variant = n_variant(dual);
  } else if (variant == "C6.6" || variant == "C6.7") {
    if (!inst.all_singleton()) throw VariantMismatch(variant + " needs one point per index");
    dual = variant == "C6.6" ? 11 : 13;
    cone_variant = variant == "C6.6" ? Variant::E1 : Variant::E3;
  } else {
    throw VariantMismatch("unknown Farkas variant '" + variant + "'");
  }

  const UnionCone cone = build_cone(inst, cone_variant, caps);
  if (member_cone) {
    Vec x = -c;
    x.push_back(-s);
    r.beta_member = member(cone, x);
    r.beta = r.beta_member.has_value();
  } else {
    const DualOutcome d = evaluate_dual(inst, c, dual, caps);
    if (d.value.is_pos_inf()) {
      r.beta = true;
      r.beta_cert = lift_to_level(inst, d, s);
    } else if (d.value.is_finite() && d.value.value() >= s) {
      r.beta = true;
      r.beta_cert = d.cert;
    }
  }
  r.expected_equivalent = r.feasible && union_convex_decide(cone, caps).convex;
  r.consistent = (!r.beta || r.alpha) && (!r.expected_equivalent || r.alpha == r.beta);
  if (!r.feasible) r.note = "infeasible instance: the inequality side holds vacuously";
  return r;
}

namespace {

std::vector<LinearConstraint> rows_of(const Instance& inst, const std::vector<PointRef>& refs) {
  std::vector<LinearConstraint> rows;
  for (const auto& r : refs) rows.push_back({inst.point(r).a, Relation::LE, inst.point(r).b});
  return rows;
}

std::vector<PointRef> set_refs(const Instance& inst, std::size_t t) {
  std::vector<PointRef> out;
  for (std::size_t p = 0; p < inst.set(t).points.size(); ++p) out.push_back({t, p});
  return out;
}

std::vector<PointRef> all_refs(const Instance& inst) {
  std::vector<PointRef> out;
  for (std::size_t t = 0; t < inst.num_indices(); ++t)
    for (auto& r : set_refs(inst, t)) out.push_back(r);
  return out;
}

void strict_item(const Instance& inst, SlaterReport& rep, const std::string& where, const std::vector<PointRef>& refs) {
  if (auto sp = strict_feasible(inst.dim(), rows_of(inst, refs))) {
    rep.witnesses.push_back({where, sp->point});
  } else {
    rep.holds = false;
    rep.failures.push_back(where);
  }
}

std::string selection_label(const Instance& inst, const PinnedSelection& s) {
  std::string out = "selection (";
  for (std::size_t t = 0; t < inst.num_indices(); ++t) {
    if (t) out += ", ";
    out += inst.index()[t] + ":" + (s.choice[t] ? std::to_string(*s.choice[t]) : std::string("hull"));
  }
  return out + ")";
}

// Some v in conv P with v.a = 0 and v.b <= 0.
bool hull_has_bad_point(const Instance& inst, std::size_t t) {
  const auto& pts = inst.set(t).points;
  const std::size_t k = pts.size();
  LinearProgram lp(k);
  for (auto& bd : lp.bounds) bd.lower = Rational(0);
  for (std::size_t i = 0; i < inst.dim(); ++i) {
    Vec row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = pts[j].a[i];
    lp.add(std::move(row), Relation::EQ, Rational(0));
  }
  lp.add(Vec(k, Rational(1)), Relation::EQ, Rational(1));
  Vec brow(k);
  for (std::size_t j = 0; j < k; ++j) brow[j] = pts[j].b;
  lp.add(std::move(brow), Relation::LE, Rational(0));
  return !lp_solve(lp).infeasible();
}

}  // namespace

SlaterReport slater_check(const Instance& inst, const std::string& cond, const Caps& caps) {
  SlaterReport rep;
  rep.cond = cond;
  if (cond == "4.2") {
    for (std::size_t t = 0; t < inst.num_indices(); ++t) {
      const std::string id = inst.index()[t];
      if (inst.set(t).convex_hull && hull_has_bad_point(inst, t)) {
        rep.holds = false;
        rep.failures.push_back(id + " hull");
      }
      for (std::size_t p = 0; p < inst.set(t).points.size(); ++p) {
        const UPoint& v = inst.set(t).points[p];
        const std::string where = id + " point " + std::to_string(p);
        if (is_zero(v.a)) {
          if (sgn(v.b) > 0) {
            rep.witnesses.push_back({where, Vec(inst.dim(), Rational(0))});
          } else if (!inst.set(t).convex_hull) {
            rep.holds = false;
            rep.failures.push_back(where);
          }
          continue;
        }
        // x = ((b - 1) / |a|^2) a gives a . x = b - 1.
        rep.witnesses.push_back({where, scale((v.b - 1) / dot(v.a, v.a), v.a)});
      }
    }
  } else if (cond == "4.3") {
    for (std::size_t t = 0; t < inst.num_indices(); ++t) strict_item(inst, rep, inst.index()[t], set_refs(inst, t));
  } else if (cond == "4.4") {
    for_each_pinned_selection(inst, caps.selections, [&](const PinnedSelection& s) {
      strict_item(inst, rep, selection_label(inst, s), pinned_points(inst, s));
    });
  } else if (cond == "4.5" || cond == "C0") {
    strict_item(inst, rep, "all", all_refs(inst));
  } else {
    throw std::invalid_argument("unknown Slater condition '" + cond + "'");
  }
  return rep;
}

ConvexityVerdict uncertainty_union_convex(const Instance& inst, const Caps& caps) {
  UnionCone u;
  u.dim = inst.dim() + 2;
  auto lifted = [&](const UPoint& p) {
    Vec v = p.lifted();
    v.push_back(1);
    return v;
  };
  for (std::size_t t = 0; t < inst.num_indices(); ++t) {
    const USet& s = inst.set(t);
    if (s.convex_hull) {
      GenCone g{u.dim, {}};
      for (const auto& p : s.points) add_generator(g, nullptr, lifted(p), {});
      u.pieces.push_back(std::move(g));
    } else {
      for (const auto& p : s.points) {
        GenCone g{u.dim, {lifted(p)}};
        bool dup = false;
        for (const auto& q : u.pieces)
          if (q.generators == g.generators) dup = true;
        if (!dup) u.pieces.push_back(std::move(g));
      }
    }
  }
  return union_convex_decide(u, caps);
}

HypothesisReport hypothesis_report(const Instance& inst, const Caps& caps) {
  HypothesisReport rep;
  auto verdict_of = [&](Variant v) -> std::optional<bool> {
    try {
      return union_convex_decide(build_cone(inst, v, caps), caps).convex;
    } catch (const CapExceeded&) {
      return std::nullopt;
    }
  };
  auto add = [&](HypothesisItem item) {
    if (item.status == "holds" && item.cone_convex && !*item.cone_convex) item.consistent = false;
    if (!item.consistent) rep.consistent = false;
    rep.items.push_back(std::move(item));
  };

  {
    HypothesisItem it{"4.1-i", "", "", Variant::N1, std::nullopt, true};
    try {
      const bool convex = uncertainty_union_convex(inst, caps).convex;
      it.status = convex ? "holds" : "fails";
      it.detail = convex ? "union of uncertainty sets is convex" : "union of uncertainty sets is not convex";
    } catch (const CapExceeded& e) {
      it.status = "undecided";
      it.detail = e.what();
    }
    it.cone_convex = verdict_of(Variant::N1);
    add(std::move(it));
  }
  {
    HypothesisItem it{"4.1-ii", "holds", "every set is polytopic or has a single constraint vector", Variant::N3,
                      std::nullopt, true};
    for (std::size_t t = 0; t < inst.num_indices(); ++t) {
      const USet& s = inst.set(t);
      if (s.convex_hull) continue;
      for (const auto& p : s.points)
        if (p.a != s.points.front().a) {
          it.status = "fails";
          it.detail = "set " + inst.index()[t] + " has several constraint vectors without the hull flag";
        }
      if (it.status == "fails") break;
    }
    it.cone_convex = verdict_of(Variant::N3);
    add(std::move(it));
  }
  {
    HypothesisItem it{"4.1-iii", "not applicable", "needs a single index with product-form uncertainty", Variant::N4,
                      std::nullopt, true};
    if (inst.num_indices() == 1) {
      std::set<Vec> as;
      std::set<Rational> bs;
      std::set<Vec> pts;
      for (const auto& p : inst.set(0).points) {
        as.insert(p.a);
        bs.insert(p.b);
        pts.insert(p.lifted());
      }
      if (pts.size() == as.size() * bs.size()) {
        it.status = "holds";
        it.detail = "single index, uncertainty set is a product of constraint vectors and bounds";
      }
    }
    it.cone_convex = verdict_of(Variant::N4);
    add(std::move(it));
  }
  add({"4.1-iv", "structural", "N6 to N9 are single finitely generated cones", Variant::N6, verdict_of(Variant::N6),
       true});

  const char* const slater_ids[][3] = {
      {"4.2-i", "4.2", "N1"}, {"4.2-ii", "4.3", "N4"}, {"4.2-iii", "4.4", "N5"}, {"4.2-iv", "4.5", "N7"}};
  for (const auto& row : slater_ids) {
    HypothesisItem it;
    it.id = row[0];
    it.cone = parse_variant(row[2]);
    try {
      const SlaterReport s = slater_check(inst, row[1], caps);
      it.status = s.holds ? "holds" : "fails";
      it.detail = std::string("condition (") + row[1] + ") " + (s.holds ? "holds" : "fails") +
                  "; compactness holds for finite data; " + row[2] + " is closed (finitely generated)";
    } catch (const CapExceeded& e) {
      it.status = "undecided";
      it.detail = e.what();
    }
    add(std::move(it));
  }
  {
    const SlaterReport s = slater_check(inst, "C0", caps);
    HypothesisItem it{"C2.3", s.holds ? "holds" : "fails",
                      "compactness, concavity and semicontinuity are structurally satisfied (finite data); "
                      "condition (C0) " +
                          std::string(s.holds ? "holds" : "fails"),
                      Variant::M1, verdict_of(Variant::M1), true};
    add(std::move(it));
  }
  return rep;
}

}  // namespace rlip
