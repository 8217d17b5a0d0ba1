#include "rlip/report.hpp"

#include <sstream>

namespace rlip {

using nlohmann::json;

json value_json(const ExtendedValue& v) { return to_string(v); }

json vec_json(const Vec& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

namespace {

std::string ref_name(const Instance& inst, const PointRef& r) {
  return inst.index()[r.t] + "[" + std::to_string(r.p) + "]";
}

json terms_json(const Instance& inst, const std::vector<CertTerm>& terms) {
  json a = json::array();
  for (const auto& x : terms) a.push_back({{"point", ref_name(inst, x.ref)}, {"mu", to_string(x.mu)}});
  return a;
}

json witness_json(const Witness& w) {
  json s = json::array();
  for (const auto& h : w.separators) s.push_back(vec_json(h));
  return {{"point", vec_json(w.point)}, {"weights", vec_json(w.weights)}, {"separators", s}};
}

json row_json(const ObjectiveRow& r) {
  return {{"c", vec_json(r.c)},       {"primal", value_json(r.primal)}, {"dual", value_json(r.dual)},
          {"gap", r.gap},             {"attained", r.attained},         {"ok", r.ok},
          {"note", r.note}};
}

std::string yes(bool b) { return b ? "yes" : "no"; }

}  // namespace

json to_json(const PrimalOutcome& p) {
  json j{{"value", value_json(p.value)}};
  if (!p.point.empty()) j["point"] = vec_json(p.point);
  if (!p.ray.empty()) j["ray"] = vec_json(p.ray);
  return j;
}

json to_json(const Instance& inst, const DualOutcome& d) {
  json j{{"k", d.k}, {"route", d.route == Route::Cone ? "cone" : "direct"}, {"value", value_json(d.value)}};
  if (d.cert) {
    j["certificate"] = terms_json(inst, d.cert->terms);
    j["lambda"] = to_string(d.cert->lambda_total());
  }
  if (d.feasible_cert) j["feasible_certificate"] = terms_json(inst, d.feasible_cert->terms);
  if (!d.ray.empty()) j["ray"] = terms_json(inst, d.ray);
  if (d.lambda_check) {
    json g = json::array();
    for (const auto& v : d.lambda_check->grid) g.push_back(value_json(v));
    j["lambda_check"] = {{"passed", d.lambda_check->passed},
                         {"lambda_star", vec_json(d.lambda_check->lambda_star)},
                         {"at_star", value_json(d.lambda_check->at_star)},
                         {"grid", g},
                         {"message", d.lambda_check->message}};
  }
  return j;
}

json to_json(const DiagramReport& d) {
  json duals = json::array();
  for (const auto& v : d.duals) duals.push_back(value_json(v));
  json edges = json::array();
  for (const auto& e : d.edges) edges.push_back({{"from", e.from}, {"to", e.to}, {"holds", e.holds}});
  return {{"duals", duals}, {"primal", value_json(d.primal)}, {"edges", edges}, {"all_hold", d.all_hold()}};
}

json to_json(const ConvexityVerdict& v) {
  json j{{"verdict", v.convex ? "CertifiedConvex" : "CertifiedNonConvex"}};
  if (v.witness) j["witness"] = witness_json(*v.witness);
  return j;
}

json to_json(const Containment& c) {
  json j{{"contained", c.contained}};
  if (c.witness) {
    j["witness"] = witness_json(*c.witness);
    j["from_piece"] = c.from_piece;
  }
  return j;
}

json to_json(const TheoremReport& r) {
  json rows = json::array();
  for (const auto& x : r.rows) rows.push_back(row_json(x));
  json j{{"theorem", r.theorem}, {"cone", to_string(r.variant)}, {"dual", r.dual},
         {"cone_verdict", to_json(r.verdict)}, {"closed", r.closed}, {"feasible", r.feasible},
         {"rows", rows}, {"consistent", r.consistent}, {"note", r.note}};
  if (r.witness_row) j["witness_row"] = row_json(*r.witness_row);
  if (r.witness_level) j["witness_level"] = to_string(*r.witness_level);
  return j;
}

json to_json(const FarkasReport& r) {
  json j{{"variant", r.variant},
         {"c", vec_json(r.c)},
         {"s", to_string(r.s)},
         {"feasible", r.feasible},
         {"alpha", r.alpha},
         {"beta", r.beta},
         {"expected_equivalent", r.expected_equivalent},
         {"consistent", r.consistent},
         {"note", r.note}};
  if (!r.alpha_point.empty()) j["alpha_point"] = vec_json(r.alpha_point);
  if (r.beta_member) j["beta_member"] = {{"piece", r.beta_member->piece}, {"weights", vec_json(r.beta_member->weights)}};
  if (r.beta_cert) {
    json a = json::array();
    for (const auto& x : r.beta_cert->terms)
      a.push_back({{"t", x.ref.t}, {"p", x.ref.p}, {"mu", to_string(x.mu)}});
    j["beta_certificate"] = a;
  }
  return j;
}

json to_json(const SlaterReport& r) {
  json w = json::array();
  for (const auto& x : r.witnesses) w.push_back({{"where", x.where}, {"point", vec_json(x.point)}});
  return {{"condition", r.cond}, {"holds", r.holds}, {"witnesses", w}, {"failures", r.failures}};
}

json to_json(const HypothesisReport& r) {
  json items = json::array();
  for (const auto& i : r.items) {
    json j{{"id", i.id}, {"status", i.status}, {"detail", i.detail}, {"consistent", i.consistent}};
    if (i.cone) j["cone"] = to_string(*i.cone);
    if (i.cone_convex) j["cone_convex"] = *i.cone_convex;
    items.push_back(j);
  }
  return {{"items", items}, {"consistent", r.consistent}};
}

json to_json(const SADualOutcome& d) {
  auto terms = [](const std::vector<SATerm>& ts) {
    json a = json::array();
    for (const auto& x : ts) a.push_back({{"t", x.t}, {"p", x.p}, {"vertex", x.vertex}, {"mu", to_string(x.mu)}});
    return a;
  };
  json j{{"k", d.k}, {"value", value_json(d.value)}, {"certificate", terms(d.terms)}};
  if (d.k == 1 && !d.v_bar.empty()) {
    j["lambda_bar"] = to_string(d.lambda_bar);
    j["v_bar"] = vec_json(d.v_bar);
  }
  if (!d.feasible_terms.empty()) j["feasible_certificate"] = terms(d.feasible_terms);
  if (!d.ray.empty()) j["ray"] = terms(d.ray);
  return j;
}

json document(const std::string& kind, json payload) {
  return {{"schema", kSchema}, {"kind", kind}, {kind, std::move(payload)}};
}

std::string render_primal(const PrimalOutcome& p) {
  std::ostringstream os;
  os << "value " << to_string(p.value);
  if (p.value.is_finite()) {
    os << " at x = ";
    for (std::size_t i = 0; i < p.point.size(); ++i) os << (i ? ", " : "") << to_string(p.point[i]);
  } else if (p.value.is_neg_inf()) {
    os << " along ray " << to_string(p.ray) << " from " << to_string(p.point);
  } else {
    os << " (infeasible)";
  }
  return os.str() + "\n";
}

std::string render_certificate(const Instance& inst, const DualCertificate& cert) {
  if (cert.terms.empty()) return "lambda = 0";
  std::ostringstream os;
  for (std::size_t i = 0; i < cert.terms.size(); ++i)
    os << (i ? " + " : "") << to_string(cert.terms[i].mu) << "*" << ref_name(inst, cert.terms[i].ref);
  return os.str();
}

std::string render_duals(const Instance& inst, const std::vector<DualOutcome>& rows, const PrimalOutcome& primal) {
  std::ostringstream os;
  os << "k  route   value   certificate\n";
  for (const auto& d : rows) {
    os << d.k << "  " << (d.route == Route::Cone ? "cone  " : "direct") << "  " << to_string(d.value);
    if (d.cert) os << "   " << render_certificate(inst, *d.cert);
    if (d.value.is_pos_inf() && d.feasible_cert) os << "   from " << render_certificate(inst, *d.feasible_cert);
    if (d.lambda_check) os << "   lambda-check " << (d.lambda_check->passed ? "passed" : "FAILED");
    os << "\n";
  }
  os << "primal " << to_string(primal.value) << "\n";
  return os.str();
}

std::string render_verdict(const ConvexityVerdict& v) {
  if (v.convex) return "CertifiedConvex\n";
  return "CertifiedNonConvex witness " + to_string(v.witness->point) + "\n";
}

std::string render_theorem(const TheoremReport& r) {
  std::ostringstream os;
  os << "theorem " << r.theorem << " on " << to_string(r.variant) << ": "
     << (r.verdict.convex ? "CertifiedConvex" : "CertifiedNonConvex");
  if (r.verdict.witness) os << " witness " << to_string(r.verdict.witness->point);
  os << "\n";
  if (!r.feasible) os << "instance infeasible\n";
  for (const auto& x : r.rows)
    os << "  c = " << to_string(x.c) << "  primal " << to_string(x.primal) << "  dual " << to_string(x.dual)
       << (x.attained ? "  attained" : "") << (x.gap ? "  gap" : "") << (x.ok ? "" : "  INCONSISTENT")
       << (x.note.empty() ? "" : "  (" + x.note + ")") << "\n";
  if (r.witness_row)
    os << "  witness objective c = " << to_string(r.witness_row->c) << "  primal " << to_string(r.witness_row->primal)
       << "  dual " << to_string(r.witness_row->dual) << (r.witness_row->gap ? "  gap exhibited" : "") << "\n";
  if (!r.note.empty()) os << "  " << r.note << "\n";
  os << (r.consistent ? "consistent" : "INCONSISTENT") << "\n";
  return os.str();
}

std::string render_farkas(const FarkasReport& r) {
  std::ostringstream os;
  os << "farkas " << r.variant << " c = " << to_string(r.c) << " s = " << to_string(r.s) << "\n"
     << "  inequality side: " << yes(r.alpha) << "\n"
     << "  certificate side: " << yes(r.beta) << "\n"
     << "  equivalence expected: " << yes(r.expected_equivalent) << "\n";
  if (!r.note.empty()) os << "  " << r.note << "\n";
  os << (r.consistent ? "consistent" : "INCONSISTENT") << "\n";
  return os.str();
}

std::string render_slater(const SlaterReport& r) {
  std::ostringstream os;
  os << "condition " << r.cond << ": " << (r.holds ? "holds" : "fails") << "\n";
  for (const auto& w : r.witnesses) os << "  " << w.where << ": x = " << to_string(w.point) << "\n";
  for (const auto& f : r.failures) os << "  fails at " << f << "\n";
  return os.str();
}

std::string render_hypotheses(const HypothesisReport& r) {
  std::ostringstream os;
  for (const auto& i : r.items) {
    os << i.id << ": " << i.status;
    if (!i.detail.empty()) os << " (" << i.detail << ")";
    if (i.cone && i.cone_convex)
      os << "; " << to_string(*i.cone) << " " << (*i.cone_convex ? "CertifiedConvex" : "CertifiedNonConvex");
    if (!i.consistent) os << "  CONTRADICTION";
    os << "\n";
  }
  return os.str();
}

std::string render_diagram(const DiagramReport& d) {
  std::ostringstream os;
  for (std::size_t k = 0; k < 9; ++k) os << "dual " << k + 1 << " = " << to_string(d.duals[k]) << "\n";
  os << "primal = " << to_string(d.primal) << "\n";
  for (const auto& e : d.edges) os << e.from << " <= " << e.to << (e.holds ? "" : "  VIOLATED") << "\n";
  return os.str();
}

std::string dossier_markdown(const Instance& inst, const DossierOptions& opts) {
  std::ostringstream os;
  os << "# Instance\n\n";
  os << "- dim: " << inst.dim() << "\n- index: ";
  for (std::size_t t = 0; t < inst.num_indices(); ++t) os << (t ? ", " : "") << inst.index()[t];
  os << "\n\n| index | hull | points |\n|---|---|---|\n";
  for (std::size_t t = 0; t < inst.num_indices(); ++t) {
    const USet& s = inst.set(t);
    os << "| " << inst.index()[t] << " | " << yes(s.convex_hull) << " | ";
    for (std::size_t p = 0; p < s.points.size(); ++p)
      os << (p ? " " : "") << "(" << to_string(s.points[p].a) << ", " << to_string(s.points[p].b) << ")";
    os << " |\n";
  }

  bool singleton = true;
  for (std::size_t t = 0; t < inst.num_indices(); ++t) singleton = singleton && inst.set(t).points.size() == 1;

  os << "\n# Cones\n\n| cone | pieces | generators | verdict | witness |\n|---|---|---|---|---|\n";
  std::vector<Variant> cones;
  for (int k = 1; k <= 9; ++k) cones.push_back(n_variant(k));
  cones.push_back(Variant::M1);
  if (singleton) cones.insert(cones.end(), {Variant::E1, Variant::E2, Variant::E3});
  for (Variant v : cones) {
    os << "| " << to_string(v) << " | ";
    try {
      const UnionCone u = build_cone(inst, v, opts.caps);
      os << u.pieces.size() << " | " << u.all_generators().size() << " | ";
      const ConvexityVerdict cv = union_convex_decide(u, opts.caps);
      os << (cv.convex ? "CertifiedConvex" : "CertifiedNonConvex") << " | "
         << (cv.witness ? to_string(cv.witness->point) : std::string("")) << " |\n";
    } catch (const CapExceeded& e) {
      os << "- | - | " << e.what() << " | |\n";
    }
  }

  os << "\n# Duals\n";
  const std::vector<Vec> objs = sample_objectives(inst, opts.objectives, 1);
  for (const auto& c : objs) {
    os << "\n## c = " << to_string(c) << "\n\n";
    try {
      const DiagramReport d = diagram_check(inst, c, opts.caps);
      os << "| dual | value |\n|---|---|\n";
      for (std::size_t k = 0; k < 9; ++k) os << "| " << k + 1 << " | " << to_string(d.duals[k]) << " |\n";
      os << "| primal | " << to_string(d.primal) << " |\n\nDiagram: ";
      if (d.all_hold()) {
        os << "all " << d.edges.size() << " edges hold\n";
      } else {
        os << "violated";
        for (const auto& e : d.edges)
          if (!e.holds) os << " " << e.from << "->" << e.to;
        os << "\n";
      }
    } catch (const CapExceeded& e) {
      os << e.what() << "\n";
    }
  }

  os << "\n# Theorems\n";
  const std::vector<Vec> samples = sample_objectives(inst, opts.theorem_samples, 1);
  std::vector<std::string> ids = {"2.1", "4.1:1", "4.1:2", "4.1:3", "4.1:4", "4.1:5", "4.2:6", "4.2:7", "C2.4"};
  if (singleton) ids.push_back("C6.5");
  for (const auto& id : ids) {
    for (Variant v : theorem_variants(id)) {
      os << "\n## " << id << " (" << to_string(v) << ")\n\n";
      try {
        TheoremReport r = theorem_check(inst, v, samples, opts.caps);
        r.theorem = id;
        os << "```\n" << render_theorem(r) << "```\n";
      } catch (const std::exception& e) {
        os << e.what() << "\n";
      }
    }
  }

  os << "\n# Slater conditions\n\n```\n";
  for (const char* cond : {"4.2", "4.3", "4.4", "4.5", "C0"}) {
    try {
      os << render_slater(slater_check(inst, cond, opts.caps));
    } catch (const CapExceeded& e) {
      os << "condition " << cond << ": " << e.what() << "\n";
    }
  }
  os << "```\n\n# Hypotheses\n\n```\n";
  try {
    os << render_hypotheses(hypothesis_report(inst, opts.caps));
  } catch (const CapExceeded& e) {
    os << e.what() << "\n";
  }
  os << "```\n";
  return os.str();
}

}  // namespace rlip
