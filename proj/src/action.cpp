#include "dyncomp/action.hpp"

#include "dyncomp/error.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace dyncomp {

// ---------------------------------------------------------------------------
// PointSet

PointSet PointSet::from_points(std::size_t universe, std::span<const std::size_t> points) {
  PointSet s(universe);
  for (std::size_t x : points) {
    if (x >= universe) {
      throw Error(ErrorCode::kInvalidArgument, "point " + std::to_string(x) +
                                                   " outside 0.." + std::to_string(universe) + ")");
    }
    s.insert(x);
  }
  return s;
}

PointSet PointSet::full(std::size_t universe) {
  PointSet s(universe);
  s.bits_.set();
  return s;
}

std::optional<std::size_t> PointSet::first() const {
  const auto pos = bits_.find_first();
  if (pos == boost::dynamic_bitset<>::npos) return std::nullopt;
  return pos;
}

std::vector<std::size_t> PointSet::points() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for (auto pos = bits_.find_first(); pos != boost::dynamic_bitset<>::npos;
       pos = bits_.find_next(pos)) {
    out.push_back(pos);
  }
  return out;
}

PointSet PointSet::complement() const {
  PointSet out(*this);
  out.bits_.flip();
  return out;
}

void PointSet::check_universe(const PointSet& other) const {
  if (universe() != other.universe()) {
    throw Error(ErrorCode::kInvalidArgument, "point sets over different universes");
  }
}

PointSet& PointSet::operator|=(const PointSet& other) {
  check_universe(other);
  bits_ |= other.bits_;
  return *this;
}

PointSet& PointSet::operator&=(const PointSet& other) {
  check_universe(other);
  bits_ &= other.bits_;
  return *this;
}

PointSet& PointSet::operator-=(const PointSet& other) {
  check_universe(other);
  bits_ -= other.bits_;
  return *this;
}

// ---------------------------------------------------------------------------
// Metric

namespace {

constexpr std::int64_t kMaxScale = std::int64_t{1} << 40;
constexpr std::int64_t kMaxRaw = std::int64_t{1} << 60;

}  // namespace

Metric Metric::discrete(std::size_t n) {
  if (n == 0) throw ValidationError("action.points", "at least one point is required");
  Metric m;
  m.n_ = n;
  m.discrete_ = true;
  m.scale_ = 1;
  m.raw_.assign(n * n, 1);
  for (std::size_t i = 0; i < n; ++i) m.raw_[i * n + i] = 0;
  if (n > 1) m.positive_.push_back(Rational(1));
  m.build_rows();
  return m;
}

Metric Metric::from_rationals(const std::vector<std::vector<Rational>>& distances) {
  const std::string field = "action.metric";
  const std::size_t n = distances.size();
  if (n == 0) throw ValidationError(field, "empty metric");
  BigInt scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (distances[i].size() != n) {
      throw ValidationError(field + "[" + std::to_string(i) + "]", "metric matrix is not square");
    }
    for (const auto& d : distances[i]) {
      const BigInt& den = boost::multiprecision::denominator(d);
      scale = scale / boost::multiprecision::gcd(scale, den) * den;
      if (scale > kMaxScale) throw ValidationError(field, "common denominator exceeds 2^40");
    }
  }
  Metric m;
  m.n_ = n;
  m.discrete_ = false;
  m.scale_ = scale.convert_to<std::int64_t>();
  m.raw_.resize(n * n);
  bool all_unit = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational scaled = distances[i][j] * m.scale_;
      const BigInt& num = boost::multiprecision::numerator(scaled);
      if (num < 0) throw ValidationError(field, "negative distance");
      if (num > kMaxRaw) throw ValidationError(field, "distance too large");
      m.raw_[i * n + j] = num.convert_to<std::int64_t>();
      if (i != j && distances[i][j] != 1) all_unit = false;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (m.raw_[i * n + i] != 0) {
      throw ValidationError(field, "nonzero diagonal at " + std::to_string(i));
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m.raw_[i * n + j] != m.raw_[j * n + i]) {
        throw ValidationError(field, "not symmetric at (" + std::to_string(i) + "," +
                                         std::to_string(j) + ")");
      }
      if (m.raw_[i * n + j] == 0) {
        throw ValidationError(field, "distinct points " + std::to_string(i) + " and " +
                                         std::to_string(j) + " at distance 0");
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::int64_t dij = m.raw_[i * n + j];  // raw <= 2^60, sums fit
      for (std::size_t k = 0; k < n; ++k) {
        if (dij > m.raw_[i * n + k] + m.raw_[k * n + j]) {
          throw ValidationError(field, "triangle inequality fails for (" + std::to_string(i) +
                                           "," + std::to_string(k) + "," + std::to_string(j) +
                                           ")");
        }
      }
    }
  }
  if (all_unit) m.discrete_ = true;
  std::vector<std::int64_t> values;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) values.push_back(m.raw_[i * n + j]);
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  for (auto v : values) m.positive_.emplace_back(v, m.scale_);
  m.build_rows();
  return m;
}

void Metric::build_rows() {
  rows_.assign(n_, {});
  for (std::size_t x = 0; x < n_; ++x) {
    auto& row = rows_[x];
    row.reserve(n_);
    for (std::size_t y = 0; y < n_; ++y) {
      row.push_back({raw_[x * n_ + y], static_cast<std::uint32_t>(y)});
    }
    std::sort(row.begin(), row.end(), [](const Neighbour& a, const Neighbour& b) {
      return a.raw != b.raw ? a.raw < b.raw : a.point < b.point;
    });
  }
}

Rational Metric::distance(std::size_t x, std::size_t y) const {
  return Rational(raw_.at(x * n_ + y), scale_);
}

Rational Metric::min_positive_distance() const {
  return positive_.empty() ? Rational(1) : positive_.front();
}

std::span<const Metric::Neighbour> Metric::neighbours(std::size_t x) const { return rows_.at(x); }

std::int64_t Metric::raw_below(const Rational& eps) const { return below_saturated(eps * scale_); }

std::int64_t Metric::raw_at_most(const Rational& eps) const {
  return floor_saturated(eps * scale_);
}

// ---------------------------------------------------------------------------
// Action

FiniteMetricAction::PowerTable::PowerTable(const Permutation& p)
    : cycle_of_(p.size()), position_(p.size()) {
  std::vector<bool> seen(p.size(), false);
  for (std::uint32_t start = 0; start < p.size(); ++start) {
    if (seen[start]) continue;
    std::vector<std::uint32_t> cycle;
    for (std::uint32_t x = start; !seen[x]; x = p[x]) {
      seen[x] = true;
      cycle_of_[x] = static_cast<std::uint32_t>(cycles_.size());
      position_[x] = static_cast<std::uint32_t>(cycle.size());
      cycle.push_back(x);
    }
    cycles_.push_back(std::move(cycle));
  }
}

std::uint32_t FiniteMetricAction::PowerTable::apply(std::uint32_t x, std::int64_t k) const {
  const auto& cycle = cycles_[cycle_of_[x]];
  const auto len = static_cast<std::int64_t>(cycle.size());
  const std::int64_t shift = ((k % len) + len) % len;
  return cycle[static_cast<std::size_t>((position_[x] + shift) % len)];
}

namespace {

Permutation compose(const Permutation& outer, const Permutation& inner) {
  Permutation out(inner.size());
  for (std::size_t x = 0; x < inner.size(); ++x) out[x] = outer[inner[x]];
  return out;
}

Permutation inverse_permutation(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) out[p[x]] = static_cast<std::uint32_t>(x);
  return out;
}

}  // namespace

FiniteMetricAction::FiniteMetricAction(GroupSpec spec, Metric metric,
                                       std::vector<Permutation> generator_maps)
    : spec_(std::move(spec)), metric_(std::move(metric)), maps_(std::move(generator_maps)) {
  const std::size_t n = metric_.size();
  const auto& gens = spec_.generators();
  if (maps_.size() != gens.size()) {
    throw ValidationError("action.generators", "expected " + std::to_string(gens.size()) +
                                                   " generator maps, got " +
                                                   std::to_string(maps_.size()));
  }
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    const std::string field = "action.generators[" + std::to_string(i) + "]";
    if (maps_[i].size() != n) throw ValidationError(field, "map has the wrong length");
    std::vector<bool> hit(n, false);
    for (auto y : maps_[i]) {
      if (y >= n || hit[y]) throw ValidationError(field, "not a permutation");
      hit[y] = true;
    }
  }
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    if (maps_[spec_.inverse_of(i)] != inverse_permutation(maps_[i])) {
      throw ValidationError("action.generators[" + std::to_string(i) + "]",
                            "inverse generator does not act by the inverse permutation");
    }
  }

  // Permutations of the basis elements, via words in the generators.
  std::vector<Permutation> basis;
  std::optional<BallEnumerator> bfs;
  for (const auto& e : spec_.basis()) {
    auto it = std::find(gens.begin(), gens.end(), e);
    if (it != gens.end()) {
      basis.push_back(maps_[static_cast<std::size_t>(it - gens.begin())]);
      continue;
    }
    if (!bfs) bfs.emplace(spec_);
    auto idx = bfs->find(e);
    while (!idx) {
      bfs->grow();
      idx = bfs->find(e);
    }
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0u);
    for (std::size_t s : bfs->word(*idx)) p = compose(p, maps_[s]);
    basis.push_back(std::move(p));
  }

  auto commute = [](const Permutation& p, const Permutation& q) {
    return compose(p, q) == compose(q, p);
  };
  if (spec_.family() == GroupFamily::kZd) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = i + 1; j < basis.size(); ++j) {
        if (!commute(basis[i], basis[j])) throw ValidationError("action", "relations violated");
      }
    }
  } else {
    const Permutation& pa = basis[0];
    const Permutation& pb = basis[1];
    Permutation pc = compose(compose(pa, pb), compose(inverse_permutation(pa), inverse_permutation(pb)));
    if (!commute(pc, pa) || !commute(pc, pb)) {
      throw ValidationError("action", "relations violated");
    }
    basis.push_back(std::move(pc));
  }
  for (const auto& p : basis) basis_powers_.emplace_back(p);

  // Generators must act as their normal forms dictate.
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::uint32_t x = 0; x < n; ++x) {
      if (apply_normal_form(gens[i], x) != maps_[i][x]) {
        throw ValidationError("action", "relations violated");
      }
    }
  }
}

std::uint32_t FiniteMetricAction::apply_normal_form(const GroupElement& g, std::uint32_t x) const {
  if (spec_.family() == GroupFamily::kZd) {
    for (std::size_t i = 0; i < basis_powers_.size(); ++i) x = basis_powers_[i].apply(x, g[i]);
    return x;
  }
  // (a, b, c) = b^b a^a c^c
  x = basis_powers_[2].apply(x, g[2]);
  x = basis_powers_[0].apply(x, g[0]);
  return basis_powers_[1].apply(x, g[1]);
}

std::size_t FiniteMetricAction::act(const GroupElement& g, std::size_t x) const {
  spec_.check_member(g);
  if (x >= size()) throw Error(ErrorCode::kInvalidArgument, "point out of range");
  return apply_normal_form(g, static_cast<std::uint32_t>(x));
}

Permutation FiniteMetricAction::permutation(const GroupElement& g) const {
  spec_.check_member(g);
  Permutation p(size());
  for (std::uint32_t x = 0; x < size(); ++x) p[x] = apply_normal_form(g, x);
  return p;
}

PointSet FiniteMetricAction::act_set(const GroupElement& g, const PointSet& a) const {
  spec_.check_member(g);
  PointSet out(size());
  for (std::size_t x : a.points()) out.insert(apply_normal_form(g, static_cast<std::uint32_t>(x)));
  return out;
}

// ---------------------------------------------------------------------------
// Fattening and shrinking

PointSet fatten(const FiniteMetricAction& action, const PointSet& a, const Rational& eps) {
  const std::size_t n = action.size();
  if (a.empty() || eps <= 0) return PointSet(n);
  const Metric& metric = action.metric();
  if (metric.is_discrete()) return eps <= 1 ? a : PointSet::full(n);
  const std::int64_t bound = metric.raw_below(eps);
  PointSet out(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (const auto& nb : metric.neighbours(x)) {
      if (nb.raw > bound) break;
      if (a.contains(nb.point)) {
        out.insert(x);
        break;
      }
    }
  }
  return out;
}

PointSet shrink(const FiniteMetricAction& action, const PointSet& a, const Rational& eps) {
  const std::size_t n = action.size();
  if (eps < 0) throw Error(ErrorCode::kInvalidArgument, "shrink radius must be nonnegative");
  if (a.count() == n) return a;
  const Metric& metric = action.metric();
  if (metric.is_discrete()) return eps < 1 ? a : PointSet(n);
  const std::int64_t bound = metric.raw_at_most(eps);
  PointSet out(n);
  for (std::size_t x : a.points()) {
    bool interior = true;
    for (const auto& nb : metric.neighbours(x)) {
      if (nb.raw > bound) break;
      if (!a.contains(nb.point)) {
        interior = false;
        break;
      }
    }
    if (interior) out.insert(x);
  }
  return out;
}

Orbits orbits(const FiniteMetricAction& action) {
  const std::size_t n = action.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  Orbits out;
  out.orbit_of.assign(n, kUnset);
  for (std::size_t start = 0; start < n; ++start) {
    if (out.orbit_of[start] != kUnset) continue;
    const std::size_t id = out.members.size();
    std::vector<std::size_t> members;
    std::deque<std::size_t> queue{start};
    out.orbit_of[start] = id;
    while (!queue.empty()) {
      const std::size_t x = queue.front();
      queue.pop_front();
      members.push_back(x);
      for (const auto& p : action.generator_maps()) {
        if (out.orbit_of[p[x]] == kUnset) {
          out.orbit_of[p[x]] = id;
          queue.push_back(p[x]);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.members.push_back(std::move(members));
  }
  return out;
}

}  // namespace dyncomp
