#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "rlip/rational.hpp"

namespace rlip {

inline constexpr std::size_t kDefaultDimensionLimit = 7;

class DimensionLimit : public std::runtime_error {
 public:
  DimensionLimit(std::size_t dim, std::size_t limit)
      : std::runtime_error("cone dimension " + std::to_string(dim) + " exceeds limit " + std::to_string(limit)) {}
};

/// {sum mu_i g_i : mu >= 0}
struct GenCone {
  std::size_t dim = 0;
  std::vector<Vec> generators;
};

/// {x : h . x >= 0 for h in normals, l . x = 0 for l in equalities}
struct HalfspaceCone {
  std::size_t dim = 0;
  std::vector<Vec> normals;
  std::vector<Vec> equalities;

  /// Equalities expanded to +l and -l, followed by the normals.
  std::vector<Vec> all_inequalities() const;
  bool contains(const Vec& x) const;
};

/// Minimal generators of {x : A x >= 0}: extreme rays modulo the lineality
/// space plus a basis of that space. Rays are primitive integer vectors.
struct RayDescription {
  std::vector<Vec> rays;
  std::vector<Vec> lineality;
};

RayDescription dd_enumerate(std::size_t dim, const std::vector<Vec>& inequalities,
                            std::size_t limit = kDefaultDimensionLimit);

HalfspaceCone to_halfspaces(const GenCone& c, std::size_t limit = kDefaultDimensionLimit);
/// Lineality directions are returned in both signs.
GenCone to_generators(const HalfspaceCone& h, std::size_t limit = kDefaultDimensionLimit);

/// Row-reduced basis of the span of vs (primitive integer rows).
std::vector<Vec> span_basis(const std::vector<Vec>& vs, std::size_t dim);

}  // namespace rlip
