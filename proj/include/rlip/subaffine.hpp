#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rlip/cones.hpp"
#include "rlip/duals.hpp"
#include "rlip/model.hpp"
#include "rlip/verify.hpp"

namespace rlip {

/// Constraint max_{a in A} <a, x> <= b; A lists polytope vertices.
struct SAPoint {
  std::vector<Vec> A;
  Rational b;
  friend bool operator==(const SAPoint&, const SAPoint&) = default;
};

class SAInstance {
 public:
  SAInstance(std::size_t dim, std::vector<std::string> index, std::map<std::string, std::vector<SAPoint>> sets);

  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& index() const { return index_; }
  std::size_t num_indices() const { return index_.size(); }
  const std::vector<SAPoint>& set(std::size_t t) const { return sets_[t]; }

  friend bool operator==(const SAInstance&, const SAInstance&) = default;

 private:
  std::size_t dim_;
  std::vector<std::string> index_;
  std::vector<std::vector<SAPoint>> sets_;
};

SAInstance load_subaffine(const std::string& path);
SAInstance subaffine_from_json(const nlohmann::json& j);
nlohmann::json subaffine_to_json(const SAInstance& sa);

/// Each (A, b) becomes the points (a_j, b) in the same index's set.
Instance expand_subaffine(const SAInstance& sa);

/// Primal under the support-function semantics, solved as
/// min c.x s.t. a_j.x <= z_V <= b_V over an auxiliary z_V per constraint.
PrimalOutcome subaffine_primal(const SAInstance& sa, const Vec& c);

/// R1: one piece cone(A x {b} u {e}) per constraint (A, b).
/// R2: one piece per index over all its constraints.
UnionCone build_R(const SAInstance& sa, Variant which);

/// mu * (A[vertex], b) of constraint p in set t.
struct SATerm {
  std::size_t t = 0;
  std::size_t p = 0;
  std::size_t vertex = 0;
  Rational mu;
};

struct SADualOutcome {
  int k = 1;
  ExtendedValue value;
  std::vector<SATerm> terms;  // Finite
  /// k = 1: lambda-bar = sum mu and v-bar = (barycenter of the used
  /// vertices, b) of the single constraint in use.
  Rational lambda_bar;
  Vec v_bar;
  /// PosInf: feasible terms and an improving ray.
  std::vector<SATerm> feasible_terms;
  std::vector<SATerm> ray;
};

/// k in {1, 2}, evaluated on R1 / R2.
SADualOutcome rsad_value(const SAInstance& sa, const Vec& c, int k);
/// One LP per constraint (k = 1) or per index (k = 2) on the raw data.
SADualOutcome rsad_direct(const SAInstance& sa, const Vec& c, int k);
std::string check_rsad_certificate(const SAInstance& sa, const Vec& c, const SADualOutcome& d);

/// Variants C2.2 (one constraint per index), RSAP-I, RSAP-II.
FarkasReport subaffine_farkas(const SAInstance& sa, const Vec& c, const Rational& s, const std::string& variant);

struct SAGenBounds {
  std::size_t max_dim = 3;
  std::size_t max_T = 3;
  std::size_t max_constraints = 2;
  std::size_t max_vertices = 3;
  std::int64_t coeff_range = 3;
};

SAInstance gen_random_subaffine(std::uint64_t seed, const SAGenBounds& bounds);

}  // namespace rlip
