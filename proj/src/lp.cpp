#include "rlip/lp.hpp"

#include <stdexcept>

namespace rlip {

namespace {

// Column layout: structurals [0, n), logicals y_i = A_i x at n + i,
// artificials at n + m + i. Every tableau row reads
// x_head + sum_j T[i][j] x_j = 0 over the nonbasic j.
class Tableau {
 public:
  Tableau(const LinearProgram& lp, std::ostream* trace) : lp_(lp), trace_(trace) {
    n_ = lp.num_vars;
    m_ = lp.constraints.size();
    cols_ = n_ + 2 * m_;
    lower_.resize(cols_);
    upper_.resize(cols_);
    value_.assign(cols_, Rational(0));
    basic_row_.assign(cols_, -1);
    for (std::size_t j = 0; j < n_; ++j) {
      lower_[j] = lp.bounds[j].lower;
      upper_[j] = lp.bounds[j].upper;
      if (lower_[j] && upper_[j] && *upper_[j] < *lower_[j]) empty_box_ = true;
      if (lower_[j]) value_[j] = *lower_[j];
      else if (upper_[j]) value_[j] = *upper_[j];
    }
    sigma_.assign(m_, 1);
    needs_art_.assign(m_, false);
    T_.assign(m_, Vec(cols_, Rational(0)));
    head_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& c = lp.constraints[i];
      const std::size_t y = n_ + i, a = n_ + m_ + i;
      if (c.rel != Relation::GE) upper_[y] = c.rhs;
      if (c.rel != Relation::LE) lower_[y] = c.rhs;
      Rational act = 0;
      for (std::size_t j = 0; j < n_; ++j) act += c.row[j] * value_[j];
      lower_[a] = Rational(0);
      upper_[a] = Rational(0);
      if (upper_[y] && act > *upper_[y]) {
        needs_art_[i] = true;
        sigma_[i] = -1;
        value_[y] = *upper_[y];
      } else if (lower_[y] && act < *lower_[y]) {
        needs_art_[i] = true;
        sigma_[i] = 1;
        value_[y] = *lower_[y];
      }
      if (needs_art_[i]) {
        upper_[a].reset();
        // a = (y - A_i x) / sigma
        for (std::size_t j = 0; j < n_; ++j) T_[i][j] = c.row[j] * sigma_[i];
        T_[i][y] = Rational(-sigma_[i]);
        T_[i][a] = 1;
        head_[i] = a;
        value_[a] = (value_[y] - act) * sigma_[i];
      } else {
        for (std::size_t j = 0; j < n_; ++j) T_[i][j] = -c.row[j];
        T_[i][y] = 1;
        T_[i][a] = Rational(-sigma_[i]);
        head_[i] = y;
        value_[y] = act;
      }
      basic_row_[head_[i]] = static_cast<long>(i);
    }
  }

  bool empty_box() const { return empty_box_; }

  bool any_artificial() const {
    for (bool b : needs_art_)
      if (b) return true;
    return false;
  }

  enum class Result { Optimal, Unbounded };

  // Minimizes cost . z over the current bounds. On Unbounded, ray_ holds the
  // improving direction over all columns.
  Result minimize(const Vec& cost) {
    for (std::size_t iter = 0;; ++iter) {
      Vec d = reduced_costs(cost);
      std::size_t enter = cols_;
      int dir = 0;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (basic_row_[j] >= 0 || sgn(d[j]) == 0) continue;
        if (d[j] < 0 && (!upper_[j] || value_[j] < *upper_[j])) {
          enter = j;
          dir = 1;
          break;
        }
        if (d[j] > 0 && (!lower_[j] || value_[j] > *lower_[j])) {
          enter = j;
          dir = -1;
          break;
        }
      }
      if (enter == cols_) return Result::Optimal;

      // Ratio test. Leaving candidate `cols_` means unbounded; ties go to the
      // smallest variable index.
      std::optional<Rational> best;
      std::size_t leave_var = cols_;
      long leave_row = -1;
      auto consider = [&](const Rational& theta, std::size_t var, long row) {
        if (!best || theta < *best || (theta == *best && var < leave_var)) {
          best = theta;
          leave_var = var;
          leave_row = row;
        }
      };
      if (lower_[enter] && upper_[enter]) consider(*upper_[enter] - *lower_[enter], enter, -1);
      for (std::size_t i = 0; i < m_; ++i) {
        const Rational& t = T_[i][enter];
        if (sgn(t) == 0) continue;
        const Rational alpha = dir > 0 ? Rational(-t) : t;
        const std::size_t b = head_[i];
        if (alpha > 0 && upper_[b]) consider((*upper_[b] - value_[b]) / alpha, b, static_cast<long>(i));
        else if (alpha < 0 && lower_[b]) consider((*lower_[b] - value_[b]) / alpha, b, static_cast<long>(i));
      }
      if (trace_) *trace_ << "iter " << iter << ": enter " << enter << (dir > 0 ? " up" : " down") << ", leave " << leave_var << "\n";
      if (!best) {
        ray_.assign(cols_, Rational(0));
        ray_[enter] = dir;
        for (std::size_t i = 0; i < m_; ++i) ray_[head_[i]] = -T_[i][enter] * dir;
        return Result::Unbounded;
      }
      const Rational theta = *best;
      value_[enter] += theta * dir;
      for (std::size_t i = 0; i < m_; ++i) value_[head_[i]] -= T_[i][enter] * dir * theta;
      if (leave_row < 0) continue;  // bound flip
      const auto r = static_cast<std::size_t>(leave_row);
      const std::size_t out = head_[r];
      // Snap the leaving variable onto the bound it reached.
      const Rational alpha = dir > 0 ? Rational(-T_[r][enter]) : T_[r][enter];
      value_[out] = alpha > 0 ? *upper_[out] : *lower_[out];
      pivot(r, enter);
    }
  }

  // pi_i = -sum_k cost[head_k] T[k][n+i]
  Vec row_prices(const Vec& cost) const {
    Vec pi(m_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t k = 0; k < m_; ++k)
        if (sgn(cost[head_[k]]) != 0 && sgn(T_[k][n_ + i]) != 0) pi[i] -= cost[head_[k]] * T_[k][n_ + i];
    return pi;
  }

  Vec reduced_costs(const Vec& cost) const {
    Vec d = cost;
    for (std::size_t k = 0; k < m_; ++k) {
      const Rational& cb = cost[head_[k]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j)
        if (sgn(T_[k][j]) != 0) d[j] -= cb * T_[k][j];
    }
    for (std::size_t k = 0; k < m_; ++k) d[head_[k]] = 0;
    return d;
  }

  void close_artificials() {
    for (std::size_t i = 0; i < m_; ++i) upper_[n_ + m_ + i] = Rational(0);
  }

  Vec phase_one_cost() const {
    Vec cost(cols_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (needs_art_[i]) cost[n_ + m_ + i] = 1;
    return cost;
  }

  Vec structural_cost(const Vec& c) const {
    Vec cost(cols_, Rational(0));
    for (std::size_t j = 0; j < n_; ++j) cost[j] = c[j];
    return cost;
  }

  Rational objective(const Vec& cost) const {
    Rational v = 0;
    for (std::size_t j = 0; j < cols_; ++j) v += cost[j] * value_[j];
    return v;
  }

  Vec structural_values() const { return Vec(value_.begin(), value_.begin() + static_cast<long>(n_)); }
  Vec structural_ray() const { return Vec(ray_.begin(), ray_.begin() + static_cast<long>(n_)); }

 private:
  void pivot(std::size_t r, std::size_t enter) {
    const std::size_t out = head_[r];
    const Rational p = T_[r][enter];
    for (auto& x : T_[r]) x /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const Rational f = T_[i][enter];
      if (sgn(f) == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j)
        if (sgn(T_[r][j]) != 0) T_[i][j] -= f * T_[r][j];
    }
    basic_row_[out] = -1;
    basic_row_[enter] = static_cast<long>(r);
    head_[r] = enter;
  }

  const LinearProgram& lp_;
  std::ostream* trace_;
  std::size_t n_ = 0, m_ = 0, cols_ = 0;
  std::vector<std::optional<Rational>> lower_, upper_;
  Vec value_;
  std::vector<long> basic_row_;
  std::vector<int> sigma_;
  std::vector<bool> needs_art_;
  std::vector<Vec> T_;
  std::vector<std::size_t> head_;
  Vec ray_;
  bool empty_box_ = false;
};

void validate(const LinearProgram& lp) {
  if (lp.objective.size() != lp.num_vars || lp.bounds.size() != lp.num_vars)
    throw std::invalid_argument("LinearProgram: objective/bounds length differs from num_vars");
  for (const auto& c : lp.constraints)
    if (c.row.size() != lp.num_vars) throw std::invalid_argument("LinearProgram: row length differs from num_vars");
}

// Infeasible box: some variable with lower > upper. Certificate uses no rows;
// it is reported with an all-zero multiplier vector and detected by the
// checker through the box itself.
LpOutcome box_infeasible(const LinearProgram& lp) {
  LpOutcome out;
  out.status = LpOutcome::Status::Infeasible;
  out.farkas.assign(lp.constraints.size(), Rational(0));
  return out;
}

}  // namespace

LpOutcome lp_solve(const LinearProgram& lp, const LpOptions& opts) {
  validate(lp);
  Tableau tab(lp, opts.trace);
  if (tab.empty_box()) return box_infeasible(lp);
  const std::size_t n = lp.num_vars, m = lp.constraints.size();

  if (tab.any_artificial()) {
    const Vec cost = tab.phase_one_cost();
    tab.minimize(cost);  // bounded below by zero
    if (sgn(tab.objective(cost)) > 0) {
      LpOutcome out;
      out.status = LpOutcome::Status::Infeasible;
      const Vec pi = tab.row_prices(cost);
      out.farkas.resize(m);
      for (std::size_t i = 0; i < m; ++i) out.farkas[i] = -pi[i];
      out.farkas = primitive(out.farkas);
      return out;
    }
  }
  tab.close_artificials();

  const bool maximize = lp.sense == Sense::Max;
  const Vec c = maximize ? -lp.objective : lp.objective;
  const Vec cost = tab.structural_cost(c);
  LpOutcome out;
  if (tab.minimize(cost) == Tableau::Result::Unbounded) {
    out.status = LpOutcome::Status::Unbounded;
    out.point = tab.structural_values();
    out.ray = primitive(tab.structural_ray());
    return out;
  }
  out.status = LpOutcome::Status::Optimal;
  out.point = tab.structural_values();
  out.value = dot(lp.objective, out.point);
  const Vec pi = tab.row_prices(cost);
  const Vec d = tab.reduced_costs(cost);
  out.duals.resize(m);
  for (std::size_t i = 0; i < m; ++i) out.duals[i] = maximize ? Rational(-pi[i]) : pi[i];
  out.reduced_costs.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.reduced_costs[j] = maximize ? Rational(-d[j]) : d[j];
  return out;
}

namespace {

bool satisfies(const LinearConstraint& c, const Vec& x) {
  const Rational act = dot(c.row, x);
  switch (c.rel) {
    case Relation::LE: return act <= c.rhs;
    case Relation::GE: return act >= c.rhs;
    case Relation::EQ: return act == c.rhs;
  }
  return false;
}

bool in_box(const LinearProgram& lp, const Vec& x) {
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    if (lp.bounds[j].lower && x[j] < *lp.bounds[j].lower) return false;
    if (lp.bounds[j].upper && x[j] > *lp.bounds[j].upper) return false;
  }
  return true;
}

std::string check_point(const LinearProgram& lp, const Vec& x) {
  if (x.size() != lp.num_vars) return "point has wrong length";
  if (!in_box(lp, x)) return "point violates a variable bound";
  for (std::size_t i = 0; i < lp.constraints.size(); ++i)
    if (!satisfies(lp.constraints[i], x)) return "point violates constraint " + std::to_string(i);
  return {};
}

}  // namespace

std::string check_certificate(const LinearProgram& lp, const LpOutcome& out) {
  const std::size_t n = lp.num_vars, m = lp.constraints.size();
  const bool maximize = lp.sense == Sense::Max;
  switch (out.status) {
    case LpOutcome::Status::Optimal: {
      if (auto e = check_point(lp, out.point); !e.empty()) return e;
      if (dot(lp.objective, out.point) != out.value) return "value does not match point";
      if (out.duals.size() != m || out.reduced_costs.size() != n) return "dual vectors have wrong length";
      // Sign pattern that makes b^T y + sum d_j bound_j a bound on the objective.
      const int s = maximize ? -1 : 1;
      Rational dual_value = 0;
      for (std::size_t i = 0; i < m; ++i) {
        const int sy = sgn(out.duals[i]) * s;
        const Relation rel = lp.constraints[i].rel;
        if ((rel == Relation::LE && sy > 0) || (rel == Relation::GE && sy < 0)) return "dual sign wrong on row " + std::to_string(i);
        dual_value += out.duals[i] * lp.constraints[i].rhs;
      }
      for (std::size_t j = 0; j < n; ++j) {
        Rational col = 0;
        for (std::size_t i = 0; i < m; ++i) col += lp.constraints[i].row[j] * out.duals[i];
        if (col + out.reduced_costs[j] != lp.objective[j]) return "objective not reproduced by duals at column " + std::to_string(j);
        const int sd = sgn(out.reduced_costs[j]) * s;
        if (sd > 0) {
          if (!lp.bounds[j].lower) return "reduced cost needs a lower bound at column " + std::to_string(j);
          dual_value += out.reduced_costs[j] * *lp.bounds[j].lower;
        } else if (sd < 0) {
          if (!lp.bounds[j].upper) return "reduced cost needs an upper bound at column " + std::to_string(j);
          dual_value += out.reduced_costs[j] * *lp.bounds[j].upper;
        }
      }
      if (dual_value != out.value) return "dual value differs from primal value";
      return {};
    }
    case LpOutcome::Status::Unbounded: {
      if (auto e = check_point(lp, out.point); !e.empty()) return e;
      if (out.ray.size() != n) return "ray has wrong length";
      const int improve = sgn(dot(lp.objective, out.ray));
      if (maximize ? improve <= 0 : improve >= 0) return "ray does not improve the objective";
      for (std::size_t j = 0; j < n; ++j) {
        if (lp.bounds[j].lower && sgn(out.ray[j]) < 0) return "ray leaves a lower bound";
        if (lp.bounds[j].upper && sgn(out.ray[j]) > 0) return "ray leaves an upper bound";
      }
      for (std::size_t i = 0; i < m; ++i) {
        const int a = sgn(dot(lp.constraints[i].row, out.ray));
        const Relation rel = lp.constraints[i].rel;
        if ((rel == Relation::LE && a > 0) || (rel == Relation::GE && a < 0) || (rel == Relation::EQ && a != 0))
          return "ray leaves constraint " + std::to_string(i);
      }
      return {};
    }
    case LpOutcome::Status::Infeasible: {
      if (out.farkas.size() != m) return "farkas vector has wrong length";
      Vec agg(n, Rational(0));
      Rational rhs = 0;
      for (std::size_t i = 0; i < m; ++i) {
        const int sw = sgn(out.farkas[i]);
        const Relation rel = lp.constraints[i].rel;
        if ((rel == Relation::LE && sw < 0) || (rel == Relation::GE && sw > 0)) return "farkas sign wrong on row " + std::to_string(i);
        for (std::size_t j = 0; j < n; ++j) agg[j] += out.farkas[i] * lp.constraints[i].row[j];
        rhs += out.farkas[i] * lp.constraints[i].rhs;
      }
      Rational lo = 0;
      for (std::size_t j = 0; j < n; ++j) {
        const auto& bd = lp.bounds[j];
        if (bd.lower && bd.upper && *bd.upper < *bd.lower) return {};  // empty box
        const int s = sgn(agg[j]);
        if (s > 0) {
          if (!bd.lower) return "farkas aggregate unbounded below at column " + std::to_string(j);
          lo += agg[j] * *bd.lower;
        } else if (s < 0) {
          if (!bd.upper) return "farkas aggregate unbounded below at column " + std::to_string(j);
          lo += agg[j] * *bd.upper;
        }
      }
      if (!(lo > rhs)) return "farkas aggregate is not contradictory";
      return {};
    }
  }
  return "unknown status";
}

FeasibilityResult feasible(std::size_t num_vars, const std::vector<LinearConstraint>& constraints) {
  LinearProgram lp(num_vars);
  lp.constraints = constraints;
  const LpOutcome out = lp_solve(lp);
  FeasibilityResult r;
  r.feasible = !out.infeasible();
  if (r.feasible) r.point = out.point;
  else r.farkas = out.farkas;
  return r;
}

std::optional<StrictPoint> strict_feasible(std::size_t num_vars, const std::vector<LinearConstraint>& rows) {
  LinearProgram lp(num_vars + 1);
  lp.sense = Sense::Max;
  lp.objective[num_vars] = 1;
  lp.bounds[num_vars].upper = Rational(1);
  for (const auto& r : rows) {
    if (r.rel != Relation::LE) throw std::invalid_argument("strict_feasible: rows must be <= rows");
    Vec row = r.row;
    row.push_back(1);
    lp.add(std::move(row), Relation::LE, r.rhs);
  }
  const LpOutcome out = lp_solve(lp);
  if (!out.optimal() || sgn(out.value) <= 0) return std::nullopt;
  StrictPoint sp;
  sp.point.assign(out.point.begin(), out.point.begin() + static_cast<long>(num_vars));
  sp.slack = out.value;
  return sp;
}

}  // namespace rlip
