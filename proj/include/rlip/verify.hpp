#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rlip/cones.hpp"
#include "rlip/duals.hpp"

namespace rlip {

class VariantMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ObjectiveRow {
  Vec c;
  ExtendedValue primal;
  ExtendedValue dual;
  bool gap = false;       // dual < primal
  bool attained = false;  // finite dual with a verified certificate
  bool ok = true;
  std::string note;
};

struct TheoremReport {
  std::string theorem;
  Variant variant = Variant::N1;
  /// Dual paired with the cone: 1..9 for the robust duals, 11..13 for the
  /// classical ones.
  int dual = 0;
  ConvexityVerdict verdict;
  bool closed = true;  // finitely generated
  bool feasible = true;
  std::vector<ObjectiveRow> rows;
  /// Objective derived from a non-convexity witness.
  std::optional<ObjectiveRow> witness_row;
  std::optional<Rational> witness_level;
  bool consistent = true;
  std::string note;
};

/// Generator-derived objectives (-a of every listed point), the coordinate
/// axes in both signs, then seeded random vectors; deduplicated and cut to
/// count.
std::vector<Vec> sample_objectives(const Instance& inst, std::size_t count = 16, std::uint64_t seed = 1);

/// N1..N9 pair with their robust duals, M1 with the sixth, E1..E3 with the
/// classical duals.
TheoremReport theorem_check(const Instance& inst, Variant v, const std::vector<Vec>& samples, const Caps& caps = {});

/// Theorem ids "2.1", "4.1:i" (i in 1..5), "4.2:i" (i in 6, 7), "C2.4",
/// "C6.5:j" (j in 1..3); "C6.5" expands to all three.
std::vector<Variant> theorem_variants(const std::string& id);

struct FarkasReport {
  std::string variant;
  Vec c;
  Rational s;
  bool feasible = true;
  bool alpha = false;
  bool beta = false;
  /// Primal optimizer (or feasible point) backing alpha when finite.
  Vec alpha_point;
  std::optional<DualCertificate> beta_cert;
  std::optional<Membership> beta_member;
  bool expected_equivalent = false;
  bool consistent = true;
  std::string note;
};

/// Variants: P2.1, C2.1, C2.2, C5.1, C5.2, C5.3, C5.4, C6.6, C6.7.
FarkasReport farkas_check(const Instance& inst, const std::string& variant, const Vec& c, const Rational& s,
                          const Caps& caps = {});
const std::vector<std::string>& farkas_variants();

struct SlaterWitness {
  std::string where;
  Vec point;
};

struct SlaterReport {
  std::string cond;
  bool holds = true;
  std::vector<SlaterWitness> witnesses;
  std::vector<std::string> failures;
};

/// cond in {4.2, 4.3, 4.4, 4.5, C0}.
SlaterReport slater_check(const Instance& inst, const std::string& cond, const Caps& caps = {});

struct HypothesisItem {
  std::string id;
  /// "holds", "fails", "not applicable", "structural", "undecided".
  std::string status;
  std::string detail;
  /// Cone the hypothesis speaks about and its verdict.
  std::optional<Variant> cone;
  std::optional<bool> cone_convex;
  bool consistent = true;
};

struct HypothesisReport {
  std::vector<HypothesisItem> items;
  bool consistent = true;
};

HypothesisReport hypothesis_report(const Instance& inst, const Caps& caps = {});

/// Exact convexity of the union of the uncertainty sets (points and
/// polytopes), decided on the homogenized cones in dimension n + 2.
ConvexityVerdict uncertainty_union_convex(const Instance& inst, const Caps& caps = {});

}  // namespace rlip
