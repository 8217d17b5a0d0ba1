#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rlip/cones.hpp"
#include "rlip/model.hpp"

namespace rlip {

class RouteUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PrimalOutcome {
  /// PosInf when infeasible, NegInf when unbounded below.
  ExtendedValue value;
  Vec point;  // optimizer (Finite) or a feasible point (NegInf)
  Vec ray;    // NegInf only
};

PrimalOutcome primal_value(const Instance& inst, const Vec& c);

enum class Route { Cone, Direct };

/// mu * (a, b) of the listed point `ref`.
struct CertTerm {
  PointRef ref;
  Rational mu;
};

/// Multipliers with sum mu * a = -c and value = -sum mu * b. The shape is
/// restricted by the dual: one point or one polytopic set for k = 1, one
/// index for k = 2, 4, at most one point per point-list index for k = 3, 5,
/// none for k >= 6.
struct DualCertificate {
  std::vector<CertTerm> terms;

  /// sum of mu
  Rational lambda_total() const;
  /// k = 2, 4: the index all terms share.
  std::optional<std::size_t> index() const;
};

/// Outcome of the lambda* side check for duals evaluated through their cone.
struct LambdaCheck {
  bool passed = true;
  /// One multiplier per index (k = 8), per grouped selection (k = 9), or a
  /// single entry.
  Vec lambda_star;
  /// Inner value at lambda*.
  ExtendedValue at_star;
  /// Inner values on the sampling grid.
  std::vector<ExtendedValue> grid;
  std::string message;
};

struct DualOutcome {
  int k = 0;
  Route route = Route::Cone;
  ExtendedValue value;
  /// Present when value is Finite.
  std::optional<DualCertificate> cert;
  /// PosInf: a feasible certificate and a direction along which the value
  /// grows without bound (terms of the direction have a zero a-sum and a
  /// negative b-sum).
  std::optional<DualCertificate> feasible_cert;
  std::vector<CertTerm> ray;
  std::optional<LambdaCheck> lambda_check;
};

/// k in 1..9. Direct routes exist for every k; for k in {4, 5, 7, 8, 9} the
/// direct route is the cone value confirmed by the lambda* check.
DualOutcome dual_value(const Instance& inst, const Vec& c, int k, Route route, const Caps& caps = {});

/// Empty string when the certificate of a Finite outcome verifies exactly.
std::string check_dual_certificate(const Instance& inst, const Vec& c, const DualOutcome& d);

/// Independent lambda* check for k in {4, 5, 7, 8, 9}; seed fixes the
/// random part of the grid.
LambdaCheck lambda_check(const Instance& inst, const Vec& c, int k, const DualOutcome& cone_outcome,
                         std::uint64_t seed = 0x5eed);

struct DiagramEdge {
  std::string from;
  std::string to;
  bool holds = true;
};

struct DiagramReport {
  std::array<ExtendedValue, 9> duals;
  ExtendedValue primal;
  std::vector<DiagramEdge> edges;
  bool all_hold() const;
};

DiagramReport diagram_check(const Instance& inst, const Vec& c, const Caps& caps = {});

/// Classical duals for all-singleton instances, j in 1..3.
DualOutcome lip_dual_value(const Instance& inst, const Vec& c, int j, const Caps& caps = {});

/// Nine robust dual values of a singleton instance group as
/// {1,2,4} -> LID1, {3,6,8} -> LID2, {5,7,9} -> LID3.
struct CollapseReport {
  std::array<ExtendedValue, 3> lid;
  std::array<ExtendedValue, 9> robust;
  bool holds = true;
};
CollapseReport collapse_check(const Instance& inst, const Vec& c, const Caps& caps = {});

}  // namespace rlip
