#include "rlip/cones.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "rlip/lp.hpp"

namespace rlip {

namespace {

const char* const kVariantNames[] = {"N1", "N2", "N3", "N4", "N5", "N6", "N7", "N8",
                                     "N9", "M1", "E1", "E2", "E3", "R1", "R2"};

}  // namespace

std::string to_string(Variant v) { return kVariantNames[static_cast<int>(v)]; }

Variant parse_variant(const std::string& s) {
  for (int i = 0; i < static_cast<int>(std::size(kVariantNames)); ++i)
    if (s == kVariantNames[i]) return static_cast<Variant>(i);
  throw std::invalid_argument("unknown cone variant '" + s + "'");
}

Variant n_variant(int k) {
  if (k < 1 || k > 9) throw std::invalid_argument("cone index must be in 1..9");
  return static_cast<Variant>(k - 1);
}

Vec unit_e(std::size_t dim) {
  Vec e(dim, Rational(0));
  e[dim - 1] = 1;
  return e;
}

void add_generator(GenCone& c, std::vector<GenOrigin>* origins, const Vec& g, GenOrigin o) {
  if (is_zero(g)) return;
  for (const auto& h : c.generators)
    if (h == g) return;
  c.generators.push_back(g);
  if (origins) origins->push_back(o);
}

std::vector<Vec> UnionCone::all_generators() const {
  std::vector<Vec> out;
  std::set<Vec> seen;
  for (const auto& p : pieces)
    for (const auto& g : p.generators)
      if (seen.insert(g).second) out.push_back(g);
  return out;
}

namespace {

class Builder {
 public:
  Builder(std::size_t dim, Variant v) {
    cone_.dim = dim;
    cone_.variant = v;
  }

  void begin() {
    cur_ = GenCone{cone_.dim, {}};
    cur_origins_.clear();
  }
  void add(const Instance& inst, PointRef r) {
    add_generator(cur_, &cur_origins_, inst.point(r).lifted(), GenOrigin{static_cast<long>(r.t), r.p, 0});
  }
  void add_set(const Instance& inst, std::size_t t) {
    for (std::size_t p = 0; p < inst.set(t).points.size(); ++p) add(inst, {t, p});
  }
  void end() {
    add_generator(cur_, &cur_origins_, unit_e(cone_.dim), GenOrigin{});
    for (const auto& p : cone_.pieces)
      if (p.generators == cur_.generators) return;
    cone_.pieces.push_back(cur_);
    cone_.origins.push_back(cur_origins_);
  }
  UnionCone take() { return std::move(cone_); }

 private:
  UnionCone cone_;
  GenCone cur_;
  std::vector<GenOrigin> cur_origins_;
};

}  // namespace

UnionCone build_cone(const Instance& inst, Variant v, const Caps& caps) {
  const std::size_t T = inst.num_indices();
  Builder b(inst.dim() + 1, v);
  switch (v) {
    case Variant::N1:
      for (std::size_t t = 0; t < T; ++t) {
        if (inst.set(t).convex_hull) {
          b.begin();
          b.add_set(inst, t);
          b.end();
          continue;
        }
        for (std::size_t p = 0; p < inst.set(t).points.size(); ++p) {
          b.begin();
          b.add(inst, {t, p});
          b.end();
        }
      }
      break;
    case Variant::N2:
    case Variant::N4:
      for (std::size_t t = 0; t < T; ++t) {
        b.begin();
        b.add_set(inst, t);
        b.end();
      }
      break;
    case Variant::N3:
    case Variant::N5:
      for_each_pinned_selection(inst, caps.selections, [&](const PinnedSelection& s) {
        b.begin();
        for (const auto& r : pinned_points(inst, s)) b.add(inst, r);
        b.end();
      });
      break;
    case Variant::N6:
    case Variant::N7:
    case Variant::N8:
    case Variant::N9:
    case Variant::M1:
      b.begin();
      for (std::size_t t = 0; t < T; ++t) b.add_set(inst, t);
      b.end();
      break;
    case Variant::E1:
      if (!inst.all_singleton()) throw NotSingleton();
      for (std::size_t t = 0; t < T; ++t) {
        b.begin();
        b.add(inst, {t, 0});
        b.end();
      }
      break;
    case Variant::E2:
    case Variant::E3:
      if (!inst.all_singleton()) throw NotSingleton();
      b.begin();
      for (std::size_t t = 0; t < T; ++t) b.add(inst, {t, 0});
      b.end();
      break;
    case Variant::R1:
    case Variant::R2:
      throw std::invalid_argument("R1/R2 are built from sub-affine instances");
  }
  return b.take();
}

std::optional<Vec> member(const GenCone& c, const Vec& x) {
  const std::size_t k = c.generators.size();
  LinearProgram lp(k);
  for (auto& bd : lp.bounds) bd.lower = Rational(0);
  for (std::size_t i = 0; i < c.dim; ++i) {
    Vec row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = c.generators[j][i];
    lp.add(std::move(row), Relation::EQ, x[i]);
  }
  const LpOutcome out = lp_solve(lp);
  if (out.infeasible()) return std::nullopt;
  return out.point;
}

std::optional<Membership> member(const UnionCone& c, const Vec& x) {
  if (x.size() != c.dim) throw std::invalid_argument("member: dimension mismatch");
  for (std::size_t j = 0; j < c.pieces.size(); ++j)
    if (auto w = member(c.pieces[j], x)) return Membership{j, std::move(*w)};
  return std::nullopt;
}

namespace {

// Open region {y : r . y > 0 for r in rows} in coordinates of a subspace.
std::optional<Vec> interior_point(std::size_t k, const std::vector<Vec>& rows) {
  std::vector<LinearConstraint> cs;
  cs.reserve(rows.size());
  for (const auto& r : rows) cs.push_back({-r, Relation::LE, Rational(0)});
  auto sp = strict_feasible(k, cs);
  if (!sp) return std::nullopt;
  return sp->point;
}

Vec restrict_to(const Vec& h, const std::vector<Vec>& basis) {
  Vec r(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) r[i] = dot(h, basis[i]);
  return r;
}

Vec lift(const Vec& y, const std::vector<Vec>& basis, std::size_t dim) {
  Vec x(dim, Rational(0));
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (sgn(y[i]) != 0) x = x + scale(y[i], basis[i]);
  return x;
}

std::optional<Vec> separator(const HalfspaceCone& h, const Vec& x) {
  for (const auto& l : h.equalities) {
    const int s = sgn(dot(l, x));
    if (s > 0) return -l;
    if (s < 0) return l;
  }
  for (const auto& n : h.normals)
    if (sgn(dot(n, x)) < 0) return n;
  return std::nullopt;
}

struct ActivePiece {
  std::size_t index;
  std::vector<Vec> facets;  // restricted to the subspace, nonzero
};

class CoverSearch {
 public:
  CoverSearch(std::size_t k, std::vector<ActivePiece> pieces) : k_(k), pieces_(std::move(pieces)) {}

  // Feasible branch lists per remaining piece, in the order of `remaining`.
  std::optional<Vec> run(const std::vector<Vec>& region) {
    std::vector<std::size_t> remaining(pieces_.size());
    std::vector<std::vector<std::size_t>> branches(pieces_.size());
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      remaining[i] = i;
      for (std::size_t b = 0; b < pieces_[i].facets.size(); ++b) branches[i].push_back(b);
    }
    return dfs(region, remaining, branches);
  }

 private:
  std::vector<Vec> branch_rows(const ActivePiece& p, std::size_t b) const {
    std::vector<Vec> rows;
    rows.push_back(-p.facets[b]);
    for (std::size_t i = 0; i < b; ++i) rows.push_back(p.facets[i]);
    return rows;
  }

  std::optional<Vec> dfs(const std::vector<Vec>& region, const std::vector<std::size_t>& remaining,
                         const std::vector<std::vector<std::size_t>>& candidates) {
    std::vector<std::size_t> next_remaining;
    std::vector<std::vector<std::size_t>> next_branches;
    for (std::size_t r = 0; r < remaining.size(); ++r) {
      const ActivePiece& p = pieces_[remaining[r]];
      std::vector<Vec> rows = region;
      rows.insert(rows.end(), p.facets.begin(), p.facets.end());
      if (!interior_point(k_, rows)) continue;  // only boundary contact left
      std::vector<std::size_t> feasible;
      for (std::size_t b : candidates[r]) {
        std::vector<Vec> br = region;
        for (auto& row : branch_rows(p, b)) br.push_back(std::move(row));
        if (interior_point(k_, br)) feasible.push_back(b);
      }
      if (feasible.empty()) return std::nullopt;  // region inside this piece
      next_remaining.push_back(remaining[r]);
      next_branches.push_back(std::move(feasible));
    }
    if (next_remaining.empty()) return interior_point(k_, region);

    std::size_t pick = 0;
    for (std::size_t r = 1; r < next_remaining.size(); ++r)
      if (next_branches[r].size() < next_branches[pick].size()) pick = r;
    const ActivePiece& p = pieces_[next_remaining[pick]];
    std::vector<std::size_t> child_remaining;
    std::vector<std::vector<std::size_t>> child_branches;
    for (std::size_t r = 0; r < next_remaining.size(); ++r) {
      if (r == pick) continue;
      child_remaining.push_back(next_remaining[r]);
      child_branches.push_back(next_branches[r]);
    }
    for (std::size_t b : next_branches[pick]) {
      std::vector<Vec> child = region;
      for (auto& row : branch_rows(p, b)) child.push_back(std::move(row));
      if (auto y = dfs(child, child_remaining, child_branches)) return y;
    }
    return std::nullopt;
  }

  std::size_t k_;
  std::vector<ActivePiece> pieces_;
};

Witness make_witness(const Vec& point, Vec weights, const std::vector<HalfspaceCone>& hs) {
  Witness w;
  w.point = point;
  w.weights = std::move(weights);
  for (const auto& h : hs) w.separators.push_back(*separator(h, point));
  return w;
}

bool in_some(const std::vector<HalfspaceCone>& hs, const Vec& x) {
  for (const auto& h : hs)
    if (h.contains(x)) return true;
  return false;
}

}  // namespace

Containment cone_in_union(const GenCone& c, const UnionCone& u, const Caps& caps) {
  if (c.dim != u.dim) throw std::invalid_argument("containment: dimension mismatch");
  const std::size_t d = c.dim;
  std::vector<Vec> G;
  for (const auto& g : c.generators)
    if (!is_zero(g)) G.push_back(g);
  Containment res;
  if (G.empty()) return res;

  std::vector<HalfspaceCone> hs;
  for (const auto& p : u.pieces) hs.push_back(to_halfspaces(p, caps.dimension));

  for (const auto& h : hs) {
    bool all = true;
    for (const auto& g : G)
      if (!h.contains(g)) {
        all = false;
        break;
      }
    if (all) return res;
  }

  // Cheap candidates: generators, pairwise sums, total sum.
  auto try_candidate = [&](const Vec& x, Vec weights) -> bool {
    if (in_some(hs, x)) return false;
    // Map weights back to c's generator list (zero generators were skipped).
    Vec full(c.generators.size(), Rational(0));
    std::size_t gi = 0;
    for (std::size_t j = 0; j < c.generators.size(); ++j)
      if (!is_zero(c.generators[j])) full[j] = weights[gi++];
    res.contained = false;
    res.witness = make_witness(x, std::move(full), hs);
    return true;
  };
  const std::size_t m = G.size();
  for (std::size_t i = 0; i < m; ++i) {
    Vec w(m, Rational(0));
    w[i] = 1;
    if (try_candidate(G[i], w)) return res;
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      Vec w(m, Rational(0));
      w[i] = w[j] = 1;
      if (try_candidate(G[i] + G[j], w)) return res;
    }
  {
    Vec total(d, Rational(0));
    for (const auto& g : G) total = total + g;
    if (try_candidate(total, Vec(m, Rational(1)))) return res;
  }

  // Exact search inside span(C).
  const std::vector<Vec> basis = span_basis(G, d);
  const std::size_t k = basis.size();
  const HalfspaceCone ch = to_halfspaces(GenCone{d, G}, caps.dimension);
  std::vector<Vec> region;
  {
    std::set<Vec> seen;
    for (const auto& h : ch.normals) {
      Vec r = restrict_to(h, basis);
      if (!is_zero(r) && seen.insert(primitive(r)).second) region.push_back(primitive(r));
    }
  }
  std::vector<ActivePiece> active;
  for (std::size_t j = 0; j < hs.size(); ++j) {
    bool lower_dim = false;
    for (const auto& l : hs[j].equalities)
      if (!is_zero(restrict_to(l, basis))) lower_dim = true;
    if (lower_dim) continue;
    ActivePiece ap{j, {}};
    std::set<Vec> seen;
    for (const auto& h : hs[j].normals) {
      Vec r = restrict_to(h, basis);
      if (!is_zero(r) && seen.insert(primitive(r)).second) ap.facets.push_back(primitive(r));
    }
    if (ap.facets.empty()) return res;  // piece contains the whole subspace
    std::vector<Vec> rows = region;
    rows.insert(rows.end(), ap.facets.begin(), ap.facets.end());
    if (!interior_point(k, rows)) continue;
    active.push_back(std::move(ap));
  }
  if (active.size() > caps.pieces) throw CapExceeded("piece", active.size());

  auto y = CoverSearch(k, active).run(region);
  if (!y) return res;

  // Generic perturbation off every hyperplane of every piece.
  for (long s = 1; s <= 64; ++s) {
    Vec z(k);
    Rational pw = 1;
    for (std::size_t i = 0; i < k; ++i, pw *= s) z[i] = pw;
    Rational step = 1;
    for (int halve = 0; halve < 64; ++halve, step /= 2) {
      const Vec yy = *y + scale(step, z);
      bool inside = true;
      for (const auto& r : region)
        if (sgn(dot(r, yy)) <= 0) {
          inside = false;
          break;
        }
      if (!inside) continue;
      const Vec x = primitive(lift(yy, basis, d));
      if (in_some(hs, x)) continue;
      auto weights = member(c, x);
      if (!weights) continue;
      res.contained = false;
      res.witness = make_witness(x, std::move(*weights), hs);
      return res;
    }
  }
  throw std::logic_error("containment: failed to place a witness off the piece boundaries");
}

Containment union_contains(const UnionCone& a, const UnionCone& b, const Caps& caps) {
  for (std::size_t j = 0; j < a.pieces.size(); ++j) {
    Containment r = cone_in_union(a.pieces[j], b, caps);
    if (!r.contained) {
      r.from_piece = j;
      return r;
    }
  }
  return {};
}

ConvexityVerdict union_convex_decide(const UnionCone& u, const Caps& caps) {
  ConvexityVerdict v;
  if (u.pieces.size() <= 1) return v;
  const Containment r = cone_in_union(GenCone{u.dim, u.all_generators()}, u, caps);
  v.convex = r.contained;
  v.witness = r.witness;
  return v;
}

std::string check_witness(const std::vector<Vec>& hull, const UnionCone& u, const Witness& w) {
  if (w.weights.size() != hull.size()) return "weight vector has wrong length";
  Vec sum(u.dim, Rational(0));
  for (std::size_t i = 0; i < hull.size(); ++i) {
    if (sgn(w.weights[i]) < 0) return "negative hull weight";
    sum = sum + scale(w.weights[i], hull[i]);
  }
  if (sum != w.point) return "hull weights do not reproduce the witness";
  if (w.separators.size() != u.pieces.size()) return "one separator per piece expected";
  for (std::size_t j = 0; j < u.pieces.size(); ++j) {
    const Vec& h = w.separators[j];
    for (const auto& g : u.pieces[j].generators)
      if (sgn(dot(h, g)) < 0) return "separator " + std::to_string(j) + " is not valid on its piece";
    if (sgn(dot(h, w.point)) >= 0) return "separator " + std::to_string(j) + " does not cut the witness";
  }
  return {};
}

ValueResult value_query(const GenCone& c, const Vec& obj) {
  if (obj.size() + 1 != c.dim) throw std::invalid_argument("value_query: objective length must be cone dim - 1");
  const std::size_t k = c.generators.size();
  const std::size_t n = obj.size();
  LinearProgram lp(k);
  lp.sense = Sense::Max;
  for (auto& bd : lp.bounds) bd.lower = Rational(0);
  for (std::size_t j = 0; j < k; ++j) lp.objective[j] = -c.generators[j][n];
  for (std::size_t i = 0; i < n; ++i) {
    Vec row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = c.generators[j][i];
    lp.add(std::move(row), Relation::EQ, -obj[i]);
  }
  const LpOutcome out = lp_solve(lp);
  ValueResult r;
  if (out.infeasible()) {
    r.value = ExtendedValue::neg_inf();
  } else if (out.unbounded()) {
    r.value = ExtendedValue::pos_inf();
    r.weights = out.point;
    r.ray = out.ray;
  } else {
    r.value = ExtendedValue::finite(out.value);
    r.weights = out.point;
  }
  return r;
}

ValueResult value_query(const UnionCone& c, const Vec& obj) {
  ValueResult best;
  best.value = ExtendedValue::neg_inf();
  for (std::size_t j = 0; j < c.pieces.size(); ++j) {
    ValueResult r = value_query(c.pieces[j], obj);
    if (r.value > best.value) {
      best = std::move(r);
      best.piece = j;
      if (best.value.is_pos_inf()) break;
    }
  }
  return best;
}

nlohmann::json cone_to_json(const UnionCone& c) {
  nlohmann::json j;
  j["dim"] = c.dim;
  j["variant"] = c.variant ? nlohmann::json(to_string(*c.variant)) : nlohmann::json(nullptr);
  nlohmann::json pieces = nlohmann::json::array();
  for (const auto& p : c.pieces) {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : p.generators) {
      nlohmann::json v = nlohmann::json::array();
      for (const auto& q : g) v.push_back(rational_to_json(q));
      gens.push_back(v);
    }
    pieces.push_back(gens);
  }
  j["pieces"] = pieces;
  return j;
}

}  // namespace rlip
