// Acceptance suite. Each criterion prints one PASS/FAIL line; all
// comparisons are exact rational comparisons (tolerance 0).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstring>
#include <functional>
#include <future>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "oracles.hpp"
#include "rlip/dd.hpp"
#include "rlip/subaffine.hpp"
#include "rlip/verify.hpp"

using namespace rlip;

namespace {

constexpr std::size_t kCorpus = 500;
constexpr std::size_t kObjectives = 8;
constexpr std::size_t kTheoremSamples = 16;

const GenBounds kFuzz{.max_dim = 4, .max_T = 4, .max_points = 4, .coeff_range = 3};

/// Half of the corpus is generated feasible so that the theorem and Farkas
/// checks see finite primal values.
Instance corpus_instance(std::size_t i) {
  GenBounds b = kFuzz;
  b.force_feasible = i % 2 == 0;
  return gen_random(1000 + i, b);
}

Instance singleton_instance(std::size_t i) {
  GenBounds b = kFuzz;
  b.max_points = 1;
  b.force_feasible = i % 2 == 0;
  return gen_random(50000 + i, b);
}

Caps acceptance_caps() {
  Caps c;
  c.pieces = 4096;
  return c;
}

/// Failure log shared across workers; keeps the first few messages.
struct Tally {
  std::atomic<std::size_t> checks{0};
  std::atomic<std::size_t> failures{0};
  std::mutex mu;
  std::vector<std::string> samples;

  void check(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (ok) return;
    ++failures;
    std::lock_guard lock(mu);
    if (samples.size() < 5) samples.push_back(what());
  }
};

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> fs;
  for (std::size_t w = 0; w < workers; ++w)
    fs.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    }));
  for (auto& f : fs) f.get();
}

bool report(int n, const Tally& t, const std::string& extra = {}) {
  const bool pass = t.failures == 0 && t.checks > 0;
  std::cout << "CRITERION " << n << ": " << (pass ? "PASS" : "FAIL") << " (tolerance 0, exact; " << t.checks
            << " checks, " << t.failures << " failures" << (extra.empty() ? "" : "; " + extra) << ")\n";
  for (const auto& s : t.samples) std::cout << "  " << s << "\n";
  return pass;
}

std::string where(std::size_t i, const Vec& c) {
  return "instance " + std::to_string(i) + " c=" + to_string(c);
}

bool criterion1() {
  Tally t;
  parallel_for(kCorpus, [&](std::size_t i) {
    const Instance inst = corpus_instance(i);
    for (const auto& c : sample_objectives(inst, kObjectives, i)) {
      const DiagramReport d = diagram_check(inst, c);
      for (const auto& e : d.edges)
        t.check(e.holds, [&] { return where(i, c) + ": edge " + e.from + " -> " + e.to + " violated"; });
    }
  });
  return report(1, t);
}

bool criterion2() {
  Tally t;
  parallel_for(kCorpus, [&](std::size_t i) {
    const Instance inst = corpus_instance(i);
    for (const auto& c : sample_objectives(inst, kObjectives, i)) {
      for (int k : {1, 2, 3, 6}) {
        const auto a = dual_value(inst, c, k, Route::Cone);
        const auto b = dual_value(inst, c, k, Route::Direct);
        t.check(a.value == b.value, [&] {
          return where(i, c) + " k=" + std::to_string(k) + ": cone " + to_string(a.value) + " direct " +
                 to_string(b.value);
        });
      }
      for (int k : {4, 5, 7, 8, 9}) {
        const auto b = dual_value(inst, c, k, Route::Direct);
        const bool ok = b.lambda_check && b.lambda_check->passed;
        t.check(ok, [&] {
          return where(i, c) + " k=" + std::to_string(k) + ": " +
                 (b.lambda_check ? b.lambda_check->message : std::string("no lambda check"));
        });
      }
    }
  });
  return report(2, t);
}

bool criterion3() {
  Tally t;
  const Caps caps = acceptance_caps();
  auto same = [&](const UnionCone& a, const UnionCone& b) {
    return union_contains(a, b, caps).contained && union_contains(b, a, caps).contained;
  };
  parallel_for(100, [&](std::size_t i) {
    const Instance inst = corpus_instance(i);
    auto cone = [&](int k) { return build_cone(inst, n_variant(k), caps); };
    t.check(same(cone(2), cone(4)), [&] { return "instance " + std::to_string(i) + ": N2 != N4"; });
    t.check(same(cone(3), cone(5)), [&] { return "instance " + std::to_string(i) + ": N3 != N5"; });
    const UnionCone n6 = cone(6);
    for (int k : {7, 8, 9})
      t.check(same(n6, cone(k)), [&] { return "instance " + std::to_string(i) + ": N6 != N" + std::to_string(k); });
    const Instance s = singleton_instance(i);
    t.check(same(build_cone(s, Variant::E2, caps), build_cone(s, Variant::E3, caps)),
            [&] { return "singleton instance " + std::to_string(i) + ": E2 != E3"; });
  });
  return report(3, t);
}

bool criterion4() {
  Tally t;
  std::atomic<std::size_t> convex{0}, nonconvex{0};
  const Caps caps = acceptance_caps();
  auto run = [&](const Instance& inst, const std::string& label, const std::vector<std::string>& ids) {
    const auto samples = sample_objectives(inst, kTheoremSamples, 1);
    for (const auto& id : ids)
      for (Variant v : theorem_variants(id)) {
        TheoremReport r;
        try {
          r = theorem_check(inst, v, samples, caps);
        } catch (const CapExceeded& e) {
          t.check(false, [&] { return label + " " + id + ": " + e.what(); });
          continue;
        }
        (r.verdict.convex ? convex : nonconvex)++;
        t.check(r.consistent, [&] {
          std::string msg = label + " theorem " + id + " on " + to_string(v) + " inconsistent";
          for (const auto& row : r.rows)
            if (!row.ok) msg += "; c=" + to_string(row.c) + " primal " + to_string(row.primal) + " dual " +
                                to_string(row.dual) + " " + row.note;
          return msg + (r.note.empty() ? "" : "; " + r.note);
        });
      }
  };
  const std::vector<std::string> ids = {"2.1", "4.1:1", "4.1:2", "4.1:3", "4.1:4", "4.1:5", "4.2:6", "4.2:7", "C2.4"};
  parallel_for(kCorpus, [&](std::size_t i) {
    run(corpus_instance(i), "instance " + std::to_string(i), ids);
    if (i < 100) run(singleton_instance(i), "singleton instance " + std::to_string(i), {"C6.5"});
  });
  return report(4, t, std::to_string(convex) + " convex and " + std::to_string(nonconvex) + " non-convex verdicts");
}

bool criterion5() {
  Tally t;
  const Instance b = instance_from_json(nlohmann::json::parse(
      R"({"dim":2,"index":["1","2"],"uncertainty":{"1":{"convex_hull":false,"points":[{"a":[1,0],"b":0}]},)"
      R"("2":{"convex_hull":false,"points":[{"a":[0,1],"b":0}]}}})"));
  const Vec c = {Rational(-1), Rational(-1)};
  const PrimalOutcome p = primal_value(b, c);
  t.check(p.value == ExtendedValue::finite(0) && p.point == Vec{Rational(0), Rational(0)},
          [&] { return "primal " + to_string(p.value) + " at " + to_string(p.point); });
  for (int k = 1; k <= 5; ++k) {
    const auto d = dual_value(b, c, k, Route::Direct);
    t.check(d.value.is_neg_inf(), [&] { return "sup RLID" + std::to_string(k) + " = " + to_string(d.value) + ", expected -inf"; });
  }
  for (int k = 6; k <= 9; ++k) {
    const auto d = dual_value(b, c, k, Route::Direct);
    bool mu11 = d.cert && d.cert->terms.size() == 2 && d.cert->terms[0].mu == 1 && d.cert->terms[1].mu == 1;
    t.check(d.value == ExtendedValue::finite(0) && mu11 && check_dual_certificate(b, c, d).empty(),
            [&] { return "sup RLID" + std::to_string(k) + " = " + to_string(d.value) + " without mu = (1, 1)"; });
  }
  const auto v = union_convex_decide(build_cone(b, Variant::N2));
  const bool ok = !v.convex && v.witness && v.witness->point == Vec{Rational(1), Rational(1), Rational(0)};
  t.check(ok, [] { return "N2 verdict or witness differs"; });
  return report(5, t);
}

bool criterion6() {
  Tally t;
  std::vector<std::string> variants = farkas_variants();
  std::mutex mu;
  std::string coverage;
  for (const auto& name : variants) {
    const bool singleton = name == "C2.2" || name == "C6.6" || name == "C6.7";
    std::atomic<std::size_t> equiv{0};
    // Instances are scanned in order until 100 (c, s) pairs with an
    // expected equivalence have been checked.
    for (std::size_t i = 0; i < 2000 && equiv < 100; ++i) {
      const Instance inst = singleton ? singleton_instance(i) : corpus_instance(i);
      Rng rng(77 + i);
      for (int rep = 0; rep < 4; ++rep) {
        Vec c(inst.dim());
        for (auto& q : c) q = rng.rational(3);
        const PrimalOutcome p = primal_value(inst, c);
        Rational s = rng.rational(3);
        if (p.value.is_finite()) s += p.value.value();
        FarkasReport r;
        try {
          r = farkas_check(inst, name, c, s, acceptance_caps());
        } catch (const VariantMismatch&) {
          break;
        }
        t.check(!r.beta || r.alpha, [&] { return name + " " + where(i, c) + " s=" + to_string(s) + ": beta without alpha"; });
        if (r.expected_equivalent && equiv < 100) {
          ++equiv;
          t.check(r.alpha == r.beta, [&] { return name + " " + where(i, c) + " s=" + to_string(s) + ": alpha != beta"; });
        }
      }
    }
    std::lock_guard lock(mu);
    coverage += " " + name + ":" + std::to_string(equiv.load());
    t.check(equiv >= 100, [&] { return name + ": only " + std::to_string(equiv.load()) + " equivalence cases found"; });
  }
  for (const std::string name : {"RSAP-I", "RSAP-II", "C2.2"}) {
    std::size_t equiv = 0;
    for (std::size_t i = 0; i < 2000 && equiv < 100; ++i) {
      SAGenBounds sb{.max_dim = 3, .max_T = 3, .max_constraints = name == "C2.2" ? 1u : 2u, .max_vertices = 3};
      const SAInstance sa = gen_random_subaffine(7000 + i, sb);
      Rng rng(99 + i);
      for (int rep = 0; rep < 4; ++rep) {
        Vec c(sa.dim());
        for (auto& q : c) q = rng.rational(3);
        const PrimalOutcome p = subaffine_primal(sa, c);
        Rational s = rng.rational(3);
        if (p.value.is_finite()) s += p.value.value();
        const FarkasReport r = subaffine_farkas(sa, c, s, name);
        t.check(!r.beta || r.alpha, [&] { return "sub-affine " + name + " " + where(i, c) + ": beta without alpha"; });
        if (r.expected_equivalent && equiv < 100) {
          ++equiv;
          t.check(r.alpha == r.beta, [&] { return "sub-affine " + name + " " + where(i, c) + ": alpha != beta"; });
        }
      }
    }
    coverage += " sub-affine " + name + ":" + std::to_string(equiv);
    t.check(equiv >= 100, [&] { return "sub-affine " + name + ": only " + std::to_string(equiv) + " equivalence cases"; });
  }
  return report(6, t, "equivalence cases per variant" + coverage);
}

bool criterion7() {
  Tally t;
  parallel_for(100, [&](std::size_t i) {
    const SAInstance sa = gen_random_subaffine(3000 + i, {.max_dim = 3, .max_T = 3, .max_constraints = 3, .max_vertices = 3});
    const Instance ex = expand_subaffine(sa);
    Rng rng(5000 + i);
    for (std::size_t j = 0; j < kObjectives; ++j) {
      Vec c(sa.dim());
      for (auto& q : c) q = rng.rational(3);
      const auto a = subaffine_primal(sa, c).value;
      const auto b = primal_value(ex, c).value;
      t.check(a == b, [&] { return where(i, c) + ": sub-affine " + to_string(a) + " expansion " + to_string(b); });
    }
    const UnionCone r2 = build_R(sa, Variant::R2);
    const UnionCone n2 = build_cone(ex, Variant::N2);
    const bool eq = union_contains(r2, n2, acceptance_caps()).contained && union_contains(n2, r2, acceptance_caps()).contained;
    t.check(eq, [&] { return "instance " + std::to_string(i) + ": R2 != N2 of the expansion"; });
  });
  return report(7, t);
}

bool criterion8() {
  Tally t;
  Rng rng(8080);
  std::size_t kinds[3] = {0, 0, 0};
  for (int i = 0; i < 300; ++i) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto m = static_cast<std::size_t>(rng.uniform(1, 6));
    LinearProgram lp(n);
    lp.sense = rng.chance(50) ? Sense::Min : Sense::Max;
    for (auto& q : lp.objective) q = rng.rational(3);
    for (std::size_t r = 0; r < m; ++r) {
      Vec row(n);
      for (auto& q : row) q = rng.rational(3);
      const auto rel = rng.uniform(0, 5);
      lp.add(row, rel < 4 ? Relation::LE : (rel == 4 ? Relation::GE : Relation::EQ), rng.rational(4));
    }
    for (auto& b : lp.bounds)
      if (rng.chance(30)) b.lower = Rational(0);
    const LpOutcome out = lp_solve(lp);
    const auto ref = oracle::brute_lp(lp);
    const std::string cert = check_certificate(lp, out);
    t.check(cert.empty(), [&] { return "LP " + std::to_string(i) + ": certificate: " + cert; });
    bool ok = false;
    switch (ref.kind) {
      case oracle::LpAnswer::Kind::Optimal: ok = out.optimal() && out.value == ref.value; ++kinds[0]; break;
      case oracle::LpAnswer::Kind::Unbounded: ok = out.unbounded(); ++kinds[1]; break;
      case oracle::LpAnswer::Kind::Infeasible: ok = out.infeasible(); ++kinds[2]; break;
    }
    t.check(ok, [&] { return "LP " + std::to_string(i) + ": simplex disagrees with enumeration"; });
  }
  return report(8, t, std::to_string(kinds[0]) + " optimal, " + std::to_string(kinds[1]) + " unbounded, " +
                          std::to_string(kinds[2]) + " infeasible");
}

bool criterion9() {
  Tally t;
  Rng rng(9090);
  for (int i = 0; i < 100; ++i) {
    GenCone g;
    g.dim = static_cast<std::size_t>(rng.uniform(1, 5));
    const auto m = rng.uniform(1, 8);
    for (std::int64_t j = 0; j < m; ++j) {
      Vec x(g.dim);
      for (auto& q : x) q = rng.uniform(-3, 3);
      g.generators.push_back(x);
    }
    const GenCone back = to_generators(to_halfspaces(g));
    bool ok = true;
    for (const auto& x : back.generators) ok = ok && member(g, x).has_value() && oracle::in_cone(g.generators, x);
    for (const auto& x : g.generators) ok = ok && member(back, x).has_value() && oracle::in_cone(back.generators, x);
    t.check(ok, [&] { return "cone " + std::to_string(i) + ": round trip changed the cone"; });
  }
  return report(9, t);
}

bool criterion10() {
  Tally t;
  std::atomic<std::size_t> established{0};
  parallel_for(kCorpus, [&](std::size_t i) {
    for (const Instance& inst : {corpus_instance(i), singleton_instance(i)}) {
      HypothesisReport h;
      try {
        h = hypothesis_report(inst, acceptance_caps());
      } catch (const CapExceeded& e) {
        t.check(false, [&] { return "instance " + std::to_string(i) + ": " + e.what(); });
        continue;
      }
      for (const auto& item : h.items) {
        if (item.status == "holds" && item.cone) ++established;
        t.check(item.consistent, [&] {
          return "instance " + std::to_string(i) + ": " + item.id + " holds but " + to_string(*item.cone) +
                 " is not certified convex";
        });
      }
    }
  });
  return report(10, t, std::to_string(established) + " established hypotheses with a cone");
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      which.push_back(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--criterion N]...\n";
      return 2;
    }
  }
  if (which.empty())
    for (int n = 1; n <= 10; ++n) which.push_back(n);
  const std::function<bool()> table[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                         criterion6, criterion7, criterion8, criterion9, criterion10};
  bool all = true;
  for (int n : which) {
    if (n < 1 || n > 10) {
      std::cerr << "criterion must be in 1..10\n";
      return 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    all = table[n - 1]() && all;
    const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "criterion " << n << " took " << secs << " s\n";
  }
  return all ? 0 : 1;
}
