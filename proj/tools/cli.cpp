#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "rlip/report.hpp"

namespace rlip::cli {

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string instance;
  bool as_json = false;
  std::size_t max_selections = 0;
  std::size_t max_pieces = 0;
};

std::size_t parse_count(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); }))
    throw std::invalid_argument("expected a non-negative integer, got '" + s + "'");
  return static_cast<std::size_t>(std::stoull(s));
}

Caps caps_from(const Common& c) {
  Caps caps;
  if (const char* env = std::getenv("ROBUST_LIP_CAP")) {
    try {
      caps = parse_cap_env(env, caps);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("ROBUST_LIP_CAP: ") + e.what());
    }
  }
  if (c.max_selections) caps.selections = c.max_selections;
  if (c.max_pieces) caps.pieces = c.max_pieces;
  return caps;
}

void add_common(CLI::App* sub, Common& c, bool needs_instance = true) {
  if (needs_instance) sub->add_option("--instance", c.instance, "Instance file (JSON)")->required();
  sub->add_flag("--json", c.as_json, "Emit JSON");
  sub->add_option("--max-selections", c.max_selections, "Selection cap");
  sub->add_option("--max-pieces", c.max_pieces, "Piece cap for exact containment search");
}

Vec objective(const std::string& text, std::size_t dim) {
  Vec c;
  try {
    c = parse_vector(text);
  } catch (const ParseError& e) {
    throw UsageError(std::string("--c: ") + e.what());
  }
  if (c.size() != dim)
    throw UsageError("--c: expected " + std::to_string(dim) + " entries, got " + std::to_string(c.size()));
  return c;
}

Instance load(const std::string& path) {
  try {
    return load_instance(path);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
}

SAInstance load_sa(const std::string& path) {
  try {
    return load_subaffine(path);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << "\n"; }

std::string sa_term(const SAInstance& sa, const SATerm& x) {
  return to_string(x.mu) + "*" + sa.index()[x.t] + "[" + std::to_string(x.p) + "].A[" + std::to_string(x.vertex) + "]";
}

}  // namespace

Caps parse_cap_env(const std::string& text, Caps base) {
  const auto comma = text.find(',');
  base.selections = parse_count(text.substr(0, comma));
  if (comma != std::string::npos) base.pieces = parse_count(text.substr(comma + 1));
  return base;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact robust linear programming duality laboratory", "rlip"};
  app.require_subcommand(1);

  Common common;
  std::string c_text, k_text = "all", route_text = "both", variant_text, check_text, other_text, theorem_text,
                      cond_text, out_path, s_text;
  std::size_t samples = 16, objectives = 4;
  std::uint64_t seed = 0;
  bool force_feasible = false, subaffine = false;
  GenBounds gb;
  SAGenBounds sgb;

  auto* solve = app.add_subcommand("solve", "Primal value and optimizer");
  add_common(solve, common);
  solve->add_option("--c", c_text, "Objective, comma separated")->required()->allow_extra_args(false);
  solve->add_flag("--subaffine", subaffine, "Instance is sub-affine");

  auto* duals = app.add_subcommand("duals", "Dual values with certificates");
  add_common(duals, common);
  duals->add_option("--c", c_text, "Objective")->required();
  duals->add_option("--k", k_text, "1..9 or all (1..2 with --subaffine)");
  duals->add_option("--route", route_text, "cone, direct or both")->check(CLI::IsMember({"cone", "direct", "both"}));
  duals->add_flag("--subaffine", subaffine, "Instance is sub-affine");

  auto* cones = app.add_subcommand("cones", "Cone dump and verdicts");
  add_common(cones, common);
  cones->add_option("--variant", variant_text, "N1..N9, M1, E1..E3, R1, R2")->required();
  cones->add_option("--check", check_text, "convexity or containment")
      ->check(CLI::IsMember({"convexity", "containment"}));
  cones->add_option("--other", other_text, "Second cone for containment");
  cones->add_flag("--subaffine", subaffine, "Instance is sub-affine");

  auto* verify = app.add_subcommand("verify", "Theorem consistency check");
  add_common(verify, common);
  verify->add_option("--theorem", theorem_text, "2.1, 4.1:i, 4.2:i, C2.4, C6.5[:j]")->required();
  verify->add_option("--c-samples", samples, "Number of sampled objectives");

  auto* farkas = app.add_subcommand("farkas", "Farkas-type equivalence check");
  add_common(farkas, common);
  farkas->add_option("--variant", variant_text, "P2.1 C2.1 C2.2 C5.1..C5.4 C6.6 C6.7 RSAP-I RSAP-II")->required();
  farkas->add_option("--c", c_text, "Objective")->required();
  farkas->add_option("--s", s_text, "Level")->required();
  farkas->add_flag("--subaffine", subaffine, "Instance is sub-affine (implied by RSAP-*)");

  auto* slater = app.add_subcommand("slater", "Slater-type conditions");
  add_common(slater, common);
  slater->add_option("--cond", cond_text, "4.2, 4.3, 4.4, 4.5 or C0")
      ->required()
      ->check(CLI::IsMember({"4.2", "4.3", "4.4", "4.5", "C0"}));

  auto* gen = app.add_subcommand("gen", "Random instance");
  add_common(gen, common, false);
  gen->add_option("--seed", seed, "Seed")->required();
  gen->add_option("--out", out_path, "Output file")->required();
  gen->add_flag("--force-feasible", force_feasible, "Every constraint admits a common slack point");
  gen->add_flag("--subaffine", subaffine, "Emit a sub-affine instance");
  gen->add_option("--max-dim", gb.max_dim, "Largest dimension");
  gen->add_option("--max-T", gb.max_T, "Largest index set");
  gen->add_option("--max-points", gb.max_points, "Largest uncertainty set");

  auto* report = app.add_subcommand("report", "Markdown dossier");
  add_common(report, common);
  report->add_option("--objectives", objectives, "Objectives in the duals section");
  report->add_option("--c-samples", samples, "Objectives per theorem check");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    const Caps caps = caps_from(common);

    if (solve->parsed()) {
      PrimalOutcome p;
      std::size_t dim;
      if (subaffine) {
        const SAInstance sa = load_sa(common.instance);
        dim = sa.dim();
        p = subaffine_primal(sa, objective(c_text, dim));
      } else {
        const Instance inst = load(common.instance);
        p = primal_value(inst, objective(c_text, inst.dim()));
      }
      if (common.as_json) emit(out, document("primal", to_json(p)));
      else out << render_primal(p);
      return kExitOk;
    }

    if (duals->parsed()) {
      std::vector<int> ks;
      if (k_text == "all") {
        for (int k = 1; k <= (subaffine ? 2 : 9); ++k) ks.push_back(k);
      } else {
        int k = 0;
        try {
          k = static_cast<int>(parse_count(k_text));
        } catch (const std::invalid_argument&) {
        }
        if (k < 1 || k > (subaffine ? 2 : 9)) throw UsageError("--k: expected 1..9, 1..2 for sub-affine, or all");
        ks.push_back(k);
      }
      bool consistent = true;
      if (subaffine) {
        const SAInstance sa = load_sa(common.instance);
        const Vec c = objective(c_text, sa.dim());
        const PrimalOutcome p = subaffine_primal(sa, c);
        json rows = json::array();
        std::ostringstream text;
        text << "k  value   certificate\n";
        for (int k : ks) {
          const SADualOutcome d = rsad_value(sa, c, k);
          const SADualOutcome dd = rsad_direct(sa, c, k);
          const std::string chk = check_rsad_certificate(sa, c, d);
          const bool agree = d.value == dd.value;
          consistent = consistent && agree && chk.empty() && d.value <= p.value;
          json j = to_json(d);
          j["direct_value"] = value_json(dd.value);
          j["certificate_check"] = chk.empty() ? "ok" : chk;
          rows.push_back(j);
          text << k << "  " << to_string(d.value);
          for (std::size_t i = 0; i < d.terms.size(); ++i) text << (i ? " + " : "   ") << sa_term(sa, d.terms[i]);
          if (!agree) text << "   direct route gives " << to_string(dd.value);
          if (!chk.empty()) text << "   certificate: " << chk;
          text << "\n";
        }
        text << "primal " << to_string(p.value) << "\n";
        if (common.as_json)
          emit(out, document("subaffine_duals", {{"rows", rows}, {"primal", to_json(p)}, {"consistent", consistent}}));
        else out << text.str();
        return consistent ? kExitOk : kExitInconsistent;
      }
      const Instance inst = load(common.instance);
      const Vec c = objective(c_text, inst.dim());
      const PrimalOutcome p = primal_value(inst, c);
      std::vector<DualOutcome> rows;
      std::vector<std::string> problems;
      for (int k : ks) {
        std::optional<DualOutcome> cone_d, direct_d;
        if (route_text != "direct") cone_d = dual_value(inst, c, k, Route::Cone, caps);
        if (route_text != "cone") direct_d = dual_value(inst, c, k, Route::Direct, caps);
        for (const auto* d : {cone_d ? &*cone_d : nullptr, direct_d ? &*direct_d : nullptr}) {
          if (!d) continue;
          if (auto e = check_dual_certificate(inst, c, *d); !e.empty())
            problems.push_back("dual " + std::to_string(k) + ": " + e);
          if (d->lambda_check && !d->lambda_check->passed)
            problems.push_back("dual " + std::to_string(k) + ": lambda check " + d->lambda_check->message);
          if (!(d->value <= p.value)) problems.push_back("dual " + std::to_string(k) + " exceeds the primal value");
          rows.push_back(*d);
        }
        if (cone_d && direct_d && !(cone_d->value == direct_d->value))
          problems.push_back("dual " + std::to_string(k) + ": routes disagree");
      }
      consistent = problems.empty();
      if (common.as_json) {
        json r = json::array();
        for (const auto& d : rows) r.push_back(to_json(inst, d));
        emit(out, document("duals", {{"rows", r}, {"primal", to_json(p)}, {"problems", problems},
                                     {"consistent", consistent}}));
      } else {
        out << render_duals(inst, rows, p);
        for (const auto& pr : problems) out << "INCONSISTENT " << pr << "\n";
      }
      return consistent ? kExitOk : kExitInconsistent;
    }

    if (cones->parsed()) {
      Variant v;
      std::optional<Variant> w;
      try {
        v = parse_variant(variant_text);
        if (!other_text.empty()) w = parse_variant(other_text);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      if (check_text == "containment" && !w) throw UsageError("--check containment needs --other");
      auto build = [&](Variant x) {
        if (x == Variant::R1 || x == Variant::R2) {
          if (!subaffine) throw UsageError("R1/R2 need --subaffine");
          return build_R(load_sa(common.instance), x);
        }
        if (subaffine) return build_cone(expand_subaffine(load_sa(common.instance)), x, caps);
        return build_cone(load(common.instance), x, caps);
      };
      UnionCone a;
      try {
        a = build(v);
      } catch (const NotSingleton& e) {
        throw UsageError(e.what());
      }
      json j{{"cone", cone_to_json(a)}};
      std::ostringstream text;
      text << to_string(v) << ": " << a.pieces.size() << " piece(s) in dimension " << a.dim << "\n";
      for (std::size_t i = 0; i < a.pieces.size(); ++i) {
        text << "  piece " << i << ":";
        for (const auto& g : a.pieces[i].generators) text << " " << to_string(g);
        text << "\n";
      }
      if (check_text == "convexity") {
        const ConvexityVerdict cv = union_convex_decide(a, caps);
        j["convexity"] = to_json(cv);
        text << render_verdict(cv);
      } else if (check_text == "containment") {
        const UnionCone b = build(*w);
        const Containment ct = union_contains(a, b, caps);
        j["containment"] = to_json(ct);
        text << to_string(v) << " subset of " << to_string(*w) << ": " << (ct.contained ? "true" : "false");
        if (ct.witness) text << " witness " << to_string(ct.witness->point);
        text << "\n";
      }
      if (common.as_json) emit(out, document("cones", j));
      else out << text.str();
      return kExitOk;
    }

    if (verify->parsed()) {
      const Instance inst = load(common.instance);
      std::vector<Variant> vs;
      try {
        vs = theorem_variants(theorem_text);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const std::vector<Vec> objs = sample_objectives(inst, samples, 1);
      bool consistent = true;
      json reps = json::array();
      for (Variant v : vs) {
        TheoremReport r;
        try {
          r = theorem_check(inst, v, objs, caps);
        } catch (const NotSingleton& e) {
          throw UsageError(e.what());
        }
        r.theorem = theorem_text;
        consistent = consistent && r.consistent;
        if (common.as_json) reps.push_back(to_json(r));
        else out << render_theorem(r);
      }
      if (common.as_json) emit(out, document("theorem", {{"reports", reps}, {"consistent", consistent}}));
      return consistent ? kExitOk : kExitInconsistent;
    }

    if (farkas->parsed()) {
      Rational s;
      try {
        s = parse_rational(s_text);
      } catch (const ParseError& e) {
        throw UsageError(std::string("--s: ") + e.what());
      }
      FarkasReport r;
      try {
        if (subaffine || variant_text.rfind("RSAP", 0) == 0) {
          const SAInstance sa = load_sa(common.instance);
          r = subaffine_farkas(sa, objective(c_text, sa.dim()), s, variant_text);
        } else {
          const Instance inst = load(common.instance);
          r = farkas_check(inst, variant_text, objective(c_text, inst.dim()), s, caps);
        }
      } catch (const VariantMismatch& e) {
        throw UsageError(e.what());
      } catch (const NotSingleton& e) {
        throw UsageError(e.what());
      }
      if (common.as_json) emit(out, document("farkas", to_json(r)));
      else out << render_farkas(r);
      return r.consistent ? kExitOk : kExitInconsistent;
    }

    if (slater->parsed()) {
      const Instance inst = load(common.instance);
      const SlaterReport r = slater_check(inst, cond_text, caps);
      if (common.as_json) emit(out, document("slater", to_json(r)));
      else out << render_slater(r);
      return kExitOk;
    }

    if (gen->parsed()) {
      std::string text;
      if (subaffine) {
        sgb.max_dim = gb.max_dim;
        sgb.max_T = gb.max_T;
        sgb.max_constraints = gb.max_points;
        text = subaffine_to_json(gen_random_subaffine(seed, sgb)).dump(2);
      } else {
        gb.force_feasible = force_feasible;
        text = serialize_instance(gen_random(seed, gb));
      }
      std::ofstream f(out_path);
      if (!f) throw UsageError(out_path + ": cannot write");
      f << text << "\n";
      if (common.as_json) emit(out, document("gen", {{"seed", seed}, {"out", out_path}}));
      else out << "wrote " << out_path << "\n";
      return kExitOk;
    }

    if (report->parsed()) {
      const Instance inst = load(common.instance);
      DossierOptions o;
      o.objectives = objectives;
      o.theorem_samples = samples;
      o.caps = caps;
      const std::string md = dossier_markdown(inst, o);
      if (common.as_json) emit(out, document("report", {{"markdown", md}}));
      else out << md;
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << " (raise --max-selections / --max-pieces or ROBUST_LIP_CAP)\n";
    return kExitUsage;
  } catch (const DimensionLimit& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace rlip::cli
