#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rlip/rational.hpp"

namespace rlip {

enum class Relation { LE, EQ, GE };
enum class Sense { Min, Max };

struct LinearConstraint {
  Vec row;
  Relation rel = Relation::LE;
  Rational rhs;
};

/// Unset means unbounded on that side.
struct VarBound {
  std::optional<Rational> lower;
  std::optional<Rational> upper;
};

/// Variables are free unless bounded explicitly.
struct LinearProgram {
  explicit LinearProgram(std::size_t n = 0) : num_vars(n), objective(n), bounds(n) {}

  std::size_t num_vars;
  Vec objective;
  Sense sense = Sense::Min;
  std::vector<LinearConstraint> constraints;
  std::vector<VarBound> bounds;

  void add(Vec row, Relation rel, Rational rhs) { constraints.push_back({std::move(row), rel, std::move(rhs)}); }
};

/// Optimal: objective = A^T duals + reduced_costs and
/// value = b^T duals + sum_j reduced_costs[j] * (bound of x_j it sits at).
/// Unbounded: point is feasible, ray is a recession direction improving the
/// objective. Infeasible: farkas holds row multipliers w (w >= 0 on <= rows,
/// w <= 0 on >= rows) with min over the variable box of (w^T A) x > w^T b.
struct LpOutcome {
  enum class Status { Optimal, Unbounded, Infeasible };

  Status status = Status::Infeasible;
  Rational value;
  Vec point;
  Vec duals;
  Vec reduced_costs;
  Vec ray;
  Vec farkas;

  bool optimal() const { return status == Status::Optimal; }
  bool unbounded() const { return status == Status::Unbounded; }
  bool infeasible() const { return status == Status::Infeasible; }
};

struct LpOptions {
  /// Tableau trace for debugging; nothing is written when null.
  std::ostream* trace = nullptr;
};

LpOutcome lp_solve(const LinearProgram& lp, const LpOptions& opts = {});

/// Empty string when the outcome's certificate verifies against lp, else a
/// description of the first failed condition.
std::string check_certificate(const LinearProgram& lp, const LpOutcome& out);

struct FeasibilityResult {
  bool feasible = false;
  Vec point;
  Vec farkas;
};

/// Phase one only. Variables are free.
FeasibilityResult feasible(std::size_t num_vars, const std::vector<LinearConstraint>& constraints);

struct StrictPoint {
  Vec point;
  Rational slack;
};

/// Rows are read as row . x < rhs. Maximizes s subject to row . x + s <= rhs
/// and s <= 1; returns the point iff the optimal s is positive.
std::optional<StrictPoint> strict_feasible(std::size_t num_vars, const std::vector<LinearConstraint>& rows);

}  // namespace rlip
