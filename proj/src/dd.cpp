#include "rlip/dd.hpp"

#include <algorithm>
#include <set>

namespace rlip {

std::vector<Vec> HalfspaceCone::all_inequalities() const {
  std::vector<Vec> out;
  for (const auto& l : equalities) {
    out.push_back(l);
    out.push_back(-l);
  }
  out.insert(out.end(), normals.begin(), normals.end());
  return out;
}

bool HalfspaceCone::contains(const Vec& x) const {
  for (const auto& l : equalities)
    if (sgn(dot(l, x)) != 0) return false;
  for (const auto& h : normals)
    if (sgn(dot(h, x)) < 0) return false;
  return true;
}

std::vector<Vec> span_basis(const std::vector<Vec>& vs, std::size_t dim) {
  std::vector<Vec> rows;
  for (const auto& v : vs)
    if (!is_zero(v)) rows.push_back(v);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < dim && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && sgn(rows[piv][col]) == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    const Rational p = rows[rank][col];
    for (auto& x : rows[rank]) x /= p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || sgn(rows[i][col]) == 0) continue;
      const Rational f = rows[i][col];
      for (std::size_t j = 0; j < dim; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  rows.resize(rank);
  for (auto& r : rows) r = primitive(r);
  return rows;
}

namespace {

struct Ray {
  Vec v;
  std::vector<bool> zero;  // over processed constraints
};

}  // namespace

RayDescription dd_enumerate(std::size_t dim, const std::vector<Vec>& inequalities, std::size_t limit) {
  if (dim > limit) throw DimensionLimit(dim, limit);
  const std::size_t m = inequalities.size();
  std::vector<Vec> lin;
  for (std::size_t i = 0; i < dim; ++i) {
    Vec e(dim, Rational(0));
    e[i] = 1;
    lin.push_back(std::move(e));
  }
  std::vector<Ray> rays;

  for (std::size_t k = 0; k < m; ++k) {
    const Vec& h = inequalities[k];
    std::size_t cut = lin.size();
    for (std::size_t i = 0; i < lin.size(); ++i)
      if (sgn(dot(h, lin[i])) != 0) {
        cut = i;
        break;
      }

    if (cut < lin.size()) {
      Vec l = lin[cut];
      Rational hl = dot(h, l);
      if (hl < 0) {
        l = -l;
        hl = -hl;
      }
      lin.erase(lin.begin() + static_cast<long>(cut));
      for (auto& other : lin) {
        const Rational f = dot(h, other) / hl;
        if (sgn(f) != 0) other = other - scale(f, l);
      }
      for (auto& r : rays) {
        const Rational f = dot(h, r.v) / hl;
        if (sgn(f) != 0) r.v = primitive(r.v - scale(f, l));
        r.zero[k] = true;
      }
      Ray nr{primitive(l), std::vector<bool>(m, false)};
      for (std::size_t j = 0; j < k; ++j) nr.zero[j] = true;
      rays.push_back(std::move(nr));
      continue;
    }

    std::vector<std::size_t> pos, neg;
    std::vector<Rational> val(rays.size());
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(h, rays[i].v);
      const int s = sgn(val[i]);
      if (s > 0) pos.push_back(i);
      else if (s < 0) neg.push_back(i);
      else {
        Ray r = rays[i];
        r.zero[k] = true;
        next.push_back(std::move(r));
      }
    }
    for (std::size_t i : pos) next.push_back(rays[i]);

    // Adjacent pairs: no third ray vanishes on every constraint where both do,
    // and the common zero set is large enough to span a 2-face.
    const std::size_t need = dim >= lin.size() + 2 ? dim - lin.size() - 2 : 0;
    for (std::size_t ip : pos) {
      for (std::size_t in : neg) {
        std::vector<bool> common(m, false);
        std::size_t cnt = 0;
        for (std::size_t j = 0; j < k; ++j)
          if (rays[ip].zero[j] && rays[in].zero[j]) {
            common[j] = true;
            ++cnt;
          }
        if (cnt < need) continue;
        bool adjacent = true;
        for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
          if (o == ip || o == in) continue;
          bool superset = true;
          for (std::size_t j = 0; j < k; ++j)
            if (common[j] && !rays[o].zero[j]) {
              superset = false;
              break;
            }
          if (superset) adjacent = false;
        }
        if (!adjacent) continue;
        Ray nr{primitive(scale(val[ip], rays[in].v) - scale(val[in], rays[ip].v)), common};
        nr.zero[k] = true;
        next.push_back(std::move(nr));
      }
    }
    rays = std::move(next);
  }

  RayDescription out;
  out.lineality = span_basis(lin, dim);
  std::set<Vec> seen;
  for (auto& r : rays) {
    if (is_zero(r.v)) continue;
    if (seen.insert(r.v).second) out.rays.push_back(r.v);
  }
  std::sort(out.rays.begin(), out.rays.end());
  return out;
}

HalfspaceCone to_halfspaces(const GenCone& c, std::size_t limit) {
  const RayDescription dual = dd_enumerate(c.dim, c.generators, limit);
  HalfspaceCone h;
  h.dim = c.dim;
  h.normals = dual.rays;
  h.equalities = dual.lineality;
  return h;
}

GenCone to_generators(const HalfspaceCone& h, std::size_t limit) {
  const RayDescription d = dd_enumerate(h.dim, h.all_inequalities(), limit);
  GenCone g;
  g.dim = h.dim;
  g.generators = d.rays;
  for (const auto& l : d.lineality) {
    g.generators.push_back(l);
    g.generators.push_back(-l);
  }
  return g;
}

}  // namespace rlip
