#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rlip/rational.hpp"

namespace rlip {

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::string what_enum, std::size_t count)
      : std::runtime_error(what_enum + " count " + std::to_string(count) + " exceeds cap"),
        count_(count) {}
  std::size_t count() const { return count_; }

 private:
  std::size_t count_;
};

/// One uncertain constraint realization <a, x> <= b.
struct UPoint {
  Vec a;
  Rational b;

  /// The embedding (a, b) in Q^(n+1).
  Vec lifted() const;
  friend bool operator==(const UPoint&, const UPoint&) = default;
};

/// A finite list of points; with convex_hull set the uncertainty set is the
/// polytope spanned by them.
struct USet {
  std::vector<UPoint> points;
  bool convex_hull = false;
  friend bool operator==(const USet&, const USet&) = default;
};

/// Address of a listed point: index position t in Instance::index, point p in
/// that set's list.
struct PointRef {
  std::size_t t = 0;
  std::size_t p = 0;
  friend bool operator==(const PointRef&, const PointRef&) = default;
};

class Instance {
 public:
  Instance(std::size_t dim, std::vector<std::string> index, std::map<std::string, USet> sets);

  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& index() const { return index_; }
  std::size_t num_indices() const { return index_.size(); }
  /// Set by index position (the order of `index`).
  const USet& set(std::size_t t) const { return sets_[t]; }
  const USet& set(const std::string& id) const;
  const UPoint& point(PointRef r) const { return sets_[r.t].points[r.p]; }

  bool all_singleton() const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::size_t dim_;
  std::vector<std::string> index_;
  std::vector<USet> sets_;
};

/// Instance file I/O. Parse failures raise ParseError, structural problems
/// ValidationError; both messages name the offending field.
Instance load_instance(const std::string& path);
Instance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const Instance& inst);
/// Canonical serialization: sorted keys, lowest-terms rationals.
std::string serialize_instance(const Instance& inst);
void save_instance(const Instance& inst, const std::string& path);

/// Rational JSON scalar: integer, decimal string, or "p/q" string.
Rational rational_from_json(const nlohmann::json& j, const std::string& field);
nlohmann::json rational_to_json(const Rational& q);

/// The union V of all uncertainty points, deduplicated, in first-occurrence
/// order. Polytopic sets contribute their vertex lists.
std::vector<UPoint> expand_constraints(const Instance& inst);

/// Same as expand_constraints, keeping the first (t, p) each distinct point
/// came from.
std::vector<std::pair<UPoint, PointRef>> expand_with_origin(const Instance& inst);

/// A choice of one listed point per index: choice[t] is a point position in
/// set t.
struct Selection {
  std::vector<std::size_t> choice;
  friend bool operator==(const Selection&, const Selection&) = default;
};

/// Number of selections, saturating at SIZE_MAX.
std::size_t selection_count(const Instance& inst);

/// Lexicographic iteration over the product of the listed point sets.
class SelectionRange {
 public:
  SelectionRange(const Instance& inst, std::size_t cap);

  class iterator {
   public:
    using value_type = Selection;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    const Selection& operator*() const { return current_; }
    const Selection* operator->() const { return &current_; }
    iterator& operator++();
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.done_ == b.done_ && (a.done_ || a.current_ == b.current_); }

   private:
    friend class SelectionRange;
    const Instance* inst_ = nullptr;
    Selection current_;
    bool done_ = true;
  };

  iterator begin() const;
  iterator end() const { return iterator{}; }
  std::size_t size() const { return count_; }

 private:
  const Instance* inst_;
  std::size_t count_;
};

/// Throws CapExceeded(count) when the product of set sizes exceeds cap.
SelectionRange enumerate_selections(const Instance& inst, std::size_t cap);

/// Selections that only choose within point-list sets; polytopic sets are
/// taken whole. A cone(u(T)) over u ranging in a product of polytopes and
/// finite sets is the union of these pinned pieces.
struct PinnedSelection {
  /// For each t: the chosen point position for finite sets; unset for
  /// polytopic sets (all vertices participate).
  std::vector<std::optional<std::size_t>> choice;
};
std::size_t pinned_selection_count(const Instance& inst);
/// Calls fn for each pinned selection in lexicographic order; throws
/// CapExceeded when the count exceeds cap.
void for_each_pinned_selection(const Instance& inst, std::size_t cap,
                               const std::function<void(const PinnedSelection&)>& fn);
/// The listed points a pinned selection puts into play.
std::vector<PointRef> pinned_points(const Instance& inst, const PinnedSelection& s);

struct GenBounds {
  std::size_t max_dim = 3;
  std::size_t max_T = 3;
  std::size_t max_points = 3;
  /// Numerators are drawn from [-coeff_range, coeff_range], denominators
  /// from [1, coeff_range].
  std::int64_t coeff_range = 3;
  /// Every generated constraint admits a common point with positive slack.
  bool force_feasible = false;
  /// Probability (in percent) that a multi-point set is flagged polytopic.
  int hull_percent = 20;
};

/// Deterministic in (seed, bounds).
Instance gen_random(std::uint64_t seed, const GenBounds& bounds);

/// Deterministic generator shared by the samplers and the fuzz harness.
/// mt19937_64 output is fixed by the standard; the range reduction is done
/// here instead of through the implementation-defined distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  /// Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool chance(int percent) { return uniform(0, 99) < percent; }
  /// num/den with num in [-range, range], den in [1, range].
  Rational rational(std::int64_t range);

 private:
  std::mt19937_64 engine_;
};

}  // namespace rlip
