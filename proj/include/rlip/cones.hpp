#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rlip/dd.hpp"
#include "rlip/model.hpp"

namespace rlip {

enum class Variant { N1, N2, N3, N4, N5, N6, N7, N8, N9, M1, E1, E2, E3, R1, R2 };

std::string to_string(Variant v);
/// Throws std::invalid_argument on unknown names.
Variant parse_variant(const std::string& s);
/// Variant for N_k, k in 1..9.
Variant n_variant(int k);

inline constexpr std::size_t kDefaultSelectionCap = 4096;
inline constexpr std::size_t kDefaultPieceCap = 12;

class NotSingleton : public std::runtime_error {
 public:
  NotSingleton() : std::runtime_error("every uncertainty set must hold exactly one point") {}
};

/// Where a generator came from: the (t, p) point, or t = -1 for e.
/// `vertex` indexes into a sub-affine point's vertex list.
struct GenOrigin {
  long t = -1;
  std::size_t p = 0;
  std::size_t vertex = 0;
  friend bool operator==(const GenOrigin&, const GenOrigin&) = default;
};

struct UnionCone {
  std::size_t dim = 0;
  std::vector<GenCone> pieces;
  /// Parallel to pieces[j].generators; empty for hand-built cones.
  std::vector<std::vector<GenOrigin>> origins;
  std::optional<Variant> variant;

  /// Generators of all pieces, deduplicated in first-occurrence order.
  std::vector<Vec> all_generators() const;
};

struct Caps {
  std::size_t selections = kDefaultSelectionCap;
  std::size_t pieces = kDefaultPieceCap;
  std::size_t dimension = kDefaultDimensionLimit;
};

/// Points embed as (a, b); e = (0, ..., 0, 1).
UnionCone build_cone(const Instance& inst, Variant v, const Caps& caps = {});

/// Appends g unless it is zero or already present.
void add_generator(GenCone& c, std::vector<GenOrigin>* origins, const Vec& g, GenOrigin o);
Vec unit_e(std::size_t dim);

struct Membership {
  std::size_t piece = 0;
  Vec weights;  // over pieces[piece].generators
};

/// Lowest piece index that contains x.
std::optional<Membership> member(const UnionCone& c, const Vec& x);
std::optional<Vec> member(const GenCone& c, const Vec& x);

/// A point of C outside every piece of the union, with its proof: weights
/// over C's generators and, per piece, a normal h valid on that piece
/// (h . g >= 0 for all its generators) with h . point < 0.
struct Witness {
  Vec point;
  Vec weights;
  std::vector<Vec> separators;
};

struct Containment {
  bool contained = true;
  std::optional<Witness> witness;
  /// Index of the piece of the left operand the witness lies in.
  std::size_t from_piece = 0;
};

/// C subset of the union of pieces. Throws CapExceeded("piece") when the
/// exhaustive search would run over more than caps.pieces pieces.
Containment cone_in_union(const GenCone& c, const UnionCone& u, const Caps& caps = {});
Containment union_contains(const UnionCone& a, const UnionCone& b, const Caps& caps = {});

struct ConvexityVerdict {
  bool convex = true;
  std::optional<Witness> witness;  // over all_generators()
};

ConvexityVerdict union_convex_decide(const UnionCone& u, const Caps& caps = {});

/// Empty string when w proves that w.point lies in cone(hull) but in no
/// piece of u.
std::string check_witness(const std::vector<Vec>& hull, const UnionCone& u, const Witness& w);

/// sup { r : (-c, -r) in cone }.
struct ValueResult {
  ExtendedValue value;
  std::optional<std::size_t> piece;
  /// Finite: optimal weights. PosInf: a feasible weight vector.
  Vec weights;
  /// PosInf: weights + tau * ray is feasible for all tau >= 0 and r grows.
  Vec ray;
};

ValueResult value_query(const UnionCone& c, const Vec& obj);
ValueResult value_query(const GenCone& c, const Vec& obj);

nlohmann::json cone_to_json(const UnionCone& c);

}  // namespace rlip
