#include "rlip/model.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace rlip {

using nlohmann::json;

Vec UPoint::lifted() const {
  Vec v = a;
  v.push_back(b);
  return v;
}

Instance::Instance(std::size_t dim, std::vector<std::string> index,
                   std::map<std::string, USet> sets)
    : dim_(dim), index_(std::move(index)) {
  if (dim_ < 1) throw ValidationError("dim: must be >= 1");
  if (index_.empty()) throw ValidationError("index: must list at least one identifier");
  std::set<std::string> seen;
  for (const auto& id : index_) {
    if (!seen.insert(id).second) throw ValidationError("index: duplicate identifier '" + id + "'");
    auto it = sets.find(id);
    if (it == sets.end()) throw ValidationError("uncertainty." + id + ": missing uncertainty set");
    const USet& s = it->second;
    if (s.points.empty()) throw ValidationError("uncertainty." + id + ".points: empty uncertainty set");
    for (std::size_t p = 0; p < s.points.size(); ++p)
      if (s.points[p].a.size() != dim_)
        throw ValidationError("uncertainty." + id + ".points[" + std::to_string(p) + "].a: length " +
                              std::to_string(s.points[p].a.size()) + " does not match dim " +
                              std::to_string(dim_));
    sets_.push_back(s);
  }
  for (const auto& [id, s] : sets)
    if (!seen.count(id)) throw ValidationError("uncertainty." + id + ": identifier not listed in index");
}

const USet& Instance::set(const std::string& id) const {
  for (std::size_t t = 0; t < index_.size(); ++t)
    if (index_[t] == id) return sets_[t];
  throw std::out_of_range("unknown index identifier '" + id + "'");
}

bool Instance::all_singleton() const {
  for (const auto& s : sets_)
    if (s.points.size() != 1) return false;
  return true;
}

Rational rational_from_json(const json& j, const std::string& field) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Rational(std::to_string(j.get<std::uint64_t>()));
    return Rational(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(field + ": " + e.what());
    }
  }
  throw ParseError(field + ": expected an integer, a decimal string or a \"p/q\" string");
}

json rational_to_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return json(q.get_num().get_si());
  return json(q.get_str());
}

Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("instance: expected a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) throw ParseError("dim: expected an integer");
  if (j["dim"].get<std::int64_t>() < 1) throw ValidationError("dim: must be >= 1");
  const auto dim = j["dim"].get<std::size_t>();
  if (!j.contains("index") || !j["index"].is_array()) throw ParseError("index: expected an array of strings");
  std::vector<std::string> index;
  for (std::size_t i = 0; i < j["index"].size(); ++i) {
    const auto& id = j["index"][i];
    if (!id.is_string()) throw ParseError("index[" + std::to_string(i) + "]: expected a string");
    index.push_back(id.get<std::string>());
  }
  if (!j.contains("uncertainty") || !j["uncertainty"].is_object())
    throw ParseError("uncertainty: expected an object");
  std::map<std::string, USet> sets;
  for (const auto& [id, body] : j["uncertainty"].items()) {
    const std::string base = "uncertainty." + id;
    if (!body.is_object()) throw ParseError(base + ": expected an object");
    USet s;
    if (body.contains("convex_hull")) {
      if (!body["convex_hull"].is_boolean()) throw ParseError(base + ".convex_hull: expected a boolean");
      s.convex_hull = body["convex_hull"].get<bool>();
    }
    if (!body.contains("points") || !body["points"].is_array())
      throw ParseError(base + ".points: expected an array");
    const auto& pts = body["points"];
    for (std::size_t p = 0; p < pts.size(); ++p) {
      const std::string pf = base + ".points[" + std::to_string(p) + "]";
      if (!pts[p].is_object() || !pts[p].contains("a") || !pts[p]["a"].is_array() || !pts[p].contains("b"))
        throw ParseError(pf + ": expected {\"a\": [...], \"b\": ...}");
      UPoint u;
      for (std::size_t k = 0; k < pts[p]["a"].size(); ++k)
        u.a.push_back(rational_from_json(pts[p]["a"][k], pf + ".a[" + std::to_string(k) + "]"));
      u.b = rational_from_json(pts[p]["b"], pf + ".b");
      s.points.push_back(std::move(u));
    }
    sets.emplace(id, std::move(s));
  }
  return Instance(dim, std::move(index), std::move(sets));
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return instance_from_json(j);
}

json instance_to_json(const Instance& inst) {
  json j;
  j["dim"] = inst.dim();
  j["index"] = inst.index();
  json unc = json::object();
  for (std::size_t t = 0; t < inst.num_indices(); ++t) {
    const USet& s = inst.set(t);
    json pts = json::array();
    for (const auto& u : s.points) {
      json a = json::array();
      for (const auto& q : u.a) a.push_back(rational_to_json(q));
      pts.push_back({{"a", a}, {"b", rational_to_json(u.b)}});
    }
    unc[inst.index()[t]] = {{"convex_hull", s.convex_hull}, {"points", pts}};
  }
  j["uncertainty"] = unc;
  return j;
}

std::string serialize_instance(const Instance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot write file");
  out << serialize_instance(inst);
}

std::vector<std::pair<UPoint, PointRef>> expand_with_origin(const Instance& inst) {
  std::vector<std::pair<UPoint, PointRef>> out;
  for (std::size_t t = 0; t < inst.num_indices(); ++t) {
    const auto& pts = inst.set(t).points;
    for (std::size_t p = 0; p < pts.size(); ++p) {
      bool dup = false;
      for (const auto& [q, _] : out)
        if (q == pts[p]) {
          dup = true;
          break;
        }
      if (!dup) out.emplace_back(pts[p], PointRef{t, p});
    }
  }
  return out;
}

std::vector<UPoint> expand_constraints(const Instance& inst) {
  std::vector<UPoint> out;
  for (auto& [u, _] : expand_with_origin(inst)) out.push_back(std::move(u));
  return out;
}

namespace {

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) return std::numeric_limits<std::size_t>::max();
  return a * b;
}

}  // namespace

std::size_t selection_count(const Instance& inst) {
  std::size_t n = 1;
  for (std::size_t t = 0; t < inst.num_indices(); ++t) n = saturating_mul(n, inst.set(t).points.size());
  return n;
}

SelectionRange::SelectionRange(const Instance& inst, std::size_t cap)
    : inst_(&inst), count_(selection_count(inst)) {
  if (count_ > cap) throw CapExceeded("selection", count_);
}

SelectionRange::iterator SelectionRange::begin() const {
  iterator it;
  it.inst_ = inst_;
  it.current_.choice.assign(inst_->num_indices(), 0);
  it.done_ = false;
  return it;
}

SelectionRange::iterator& SelectionRange::iterator::operator++() {
  // Last index varies fastest: lexicographic in (index order, point index).
  for (std::size_t k = current_.choice.size(); k-- > 0;) {
    if (++current_.choice[k] < inst_->set(k).points.size()) return *this;
    current_.choice[k] = 0;
  }
  done_ = true;
  return *this;
}

SelectionRange enumerate_selections(const Instance& inst, std::size_t cap) { return SelectionRange(inst, cap); }

std::size_t pinned_selection_count(const Instance& inst) {
  std::size_t n = 1;
  for (std::size_t t = 0; t < inst.num_indices(); ++t)
    if (!inst.set(t).convex_hull) n = saturating_mul(n, inst.set(t).points.size());
  return n;
}

void for_each_pinned_selection(const Instance& inst, std::size_t cap,
                               const std::function<void(const PinnedSelection&)>& fn) {
  const std::size_t count = pinned_selection_count(inst);
  if (count > cap) throw CapExceeded("selection", count);
  PinnedSelection s;
  s.choice.resize(inst.num_indices());
  for (std::size_t t = 0; t < inst.num_indices(); ++t)
    if (!inst.set(t).convex_hull) s.choice[t] = 0;
  while (true) {
    fn(s);
    std::size_t k = inst.num_indices();
    while (k-- > 0) {
      if (!s.choice[k]) continue;
      if (++*s.choice[k] < inst.set(k).points.size()) break;
      s.choice[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) return;
  }
}

std::vector<PointRef> pinned_points(const Instance& inst, const PinnedSelection& s) {
  std::vector<PointRef> out;
  for (std::size_t t = 0; t < inst.num_indices(); ++t) {
    if (s.choice[t]) {
      out.push_back({t, *s.choice[t]});
    } else {
      for (std::size_t p = 0; p < inst.set(t).points.size(); ++p) out.push_back({t, p});
    }
  }
  return out;
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next() { return engine_(); }

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("Rng::uniform: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t r;
  do r = next();
  while (r >= limit);
  return lo + static_cast<std::int64_t>(r % span);
}

Rational Rng::rational(std::int64_t range) {
  const std::int64_t num = uniform(-range, range);
  // Integers half the time keep generated data readable.
  const std::int64_t den = chance(50) ? 1 : uniform(1, range);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Instance gen_random(std::uint64_t seed, const GenBounds& bounds) {
  if (bounds.max_dim < 1 || bounds.max_T < 1 || bounds.max_points < 1 || bounds.coeff_range < 1)
    throw std::invalid_argument("gen_random: bounds must be positive");
  Rng rng(seed);
  const auto n = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(bounds.max_dim)));
  const auto T = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(bounds.max_T)));
  const std::int64_t range = bounds.coeff_range;

  Vec anchor(n);
  for (auto& x : anchor) x = rng.rational(range);

  auto random_a = [&] {
    Vec a(n);
    for (auto& x : a) x = rng.rational(range);
    return a;
  };
  auto feasible_b = [&](const Vec& a) -> Rational {
    // Positive slack at the anchor point.
    const std::int64_t num = rng.uniform(1, range);
    Rational slack(num, rng.uniform(1, range));
    slack.canonicalize();
    return dot(a, anchor) + slack;
  };

  std::vector<std::string> index;
  std::map<std::string, USet> sets;
  for (std::size_t t = 0; t < T; ++t) {
    const auto k = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(bounds.max_points)));
    USet s;
    for (std::size_t p = 0; p < k; ++p) {
      UPoint u;
      const int mode = static_cast<int>(rng.uniform(0, 99));
      if (!bounds.force_feasible && mode < 8 && !s.points.empty()) {
        // Opposing pair: tight (b + b' = 0) or contradictory (b + b' < 0).
        const UPoint& prev = s.points.back();
        u.a = -prev.a;
        u.b = -prev.b - Rational(rng.uniform(0, 1));
      } else if (!bounds.force_feasible && mode < 12) {
        u.a = Vec(n, Rational(0));
        u.b = rng.rational(range);
      } else {
        u.a = random_a();
        u.b = bounds.force_feasible ? feasible_b(u.a) : rng.rational(range);
      }
      s.points.push_back(std::move(u));
    }
    if (s.points.size() >= 2) s.convex_hull = rng.chance(bounds.hull_percent);
    index.push_back("t" + std::to_string(t + 1));
    sets.emplace(index.back(), std::move(s));
  }
  return Instance(n, std::move(index), std::move(sets));
}

}  // namespace rlip
