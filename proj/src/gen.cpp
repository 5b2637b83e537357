#include "dyncomp/gen.hpp"

#include "dyncomp/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace dyncomp {

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

std::vector<std::size_t> shuffled(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
  return v;
}

std::int64_t mod(std::int64_t a, std::int64_t k) { return ((a % k) + k) % k; }

// One orbit of the model: a point count and the action of a group element on
// local coordinates 0..size-1.
struct Component {
  std::size_t size;
  std::function<std::size_t(const GroupElement&, std::size_t)> act;
};

Component cycle(std::size_t c) {
  return {c, [c](const GroupElement& g, std::size_t x) {
            return static_cast<std::size_t>(mod(static_cast<std::int64_t>(x) + g[0],
                                                static_cast<std::int64_t>(c)));
          }};
}

// Torus p x q; the first two coordinates of g shift it (c acts trivially for
// Heisenberg elements).
Component torus(std::size_t p, std::size_t q) {
  return {p * q, [p, q](const GroupElement& g, std::size_t x) {
            const auto pp = static_cast<std::int64_t>(p);
            const auto qq = static_cast<std::int64_t>(q);
            const std::int64_t i = mod(static_cast<std::int64_t>(x) / qq + g[0], pp);
            const std::int64_t j = mod(static_cast<std::int64_t>(x) % qq + g[1], qq);
            return static_cast<std::size_t>(i * qq + j);
          }};
}

// H(Z/k) by left translation, point (a, b, c) stored as a + k b + k^2 c.
Component heisenberg_quotient(std::size_t k) {
  return {k * k * k, [k](const GroupElement& g, std::size_t x) {
            const auto kk = static_cast<std::int64_t>(k);
            const auto xx = static_cast<std::int64_t>(x);
            const std::int64_t a = xx % kk;
            const std::int64_t b = (xx / kk) % kk;
            const std::int64_t c = xx / (kk * kk);
            const std::int64_t na = mod(g[0] + a, kk);
            const std::int64_t nb = mod(g[1] + b, kk);
            const std::int64_t nc = mod(g[2] + c + mod(g[0], kk) * b, kk);
            return static_cast<std::size_t>(na + kk * nb + kk * kk * nc);
          }};
}

std::pair<std::size_t, std::size_t> torus_shape(std::mt19937_64& rng, std::size_t lo,
                                                std::size_t hi) {
  for (int tries = 0; tries < 1000; ++tries) {
    const std::size_t p = uniform(rng, 2, std::max<std::size_t>(2, hi / 2));
    const std::size_t qmax = hi / p;
    const std::size_t qmin = std::max<std::size_t>(2, (lo + p - 1) / p);
    if (qmin <= qmax) return {p, uniform(rng, qmin, qmax)};
  }
  throw Error(ErrorCode::kInvalidArgument, "no torus fits the requested point range");
}

Component random_component(std::mt19937_64& rng, const std::string& group, std::size_t lo,
                           std::size_t hi) {
  if (group == "z") return cycle(uniform(rng, std::max<std::size_t>(lo, 1), hi));
  if (group == "z2") {
    auto [p, q] = torus_shape(rng, std::max<std::size_t>(lo, 4), hi);
    return torus(p, q);
  }
  if (group == "heisenberg") {
    std::vector<std::size_t> ks;
    for (std::size_t k = 2; k * k * k <= hi; ++k) {
      if (k * k * k >= lo) ks.push_back(k);
    }
    if (!ks.empty() && rng() % 2 == 0) return heisenberg_quotient(ks[rng() % ks.size()]);
    auto [p, q] = torus_shape(rng, std::max<std::size_t>(lo, 4), hi);
    return torus(p, q);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown model group \"" + group + "\"");
}

GroupSpec model_spec(const std::string& group) {
  if (group == "z") return GroupSpec::zd(1);
  if (group == "z2") return GroupSpec::zd(2);
  if (group == "heisenberg") return GroupSpec::heisenberg();
  throw Error(ErrorCode::kInvalidArgument, "unknown model group \"" + group + "\"");
}

}  // namespace

std::vector<std::size_t> random_subset(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  if (k > n) throw Error(ErrorCode::kInvalidArgument, "subset larger than the point set");
  std::vector<std::size_t> v = shuffled(rng, n);
  v.resize(k);
  std::sort(v.begin(), v.end());
  return v;
}

Metric cycle_metric(std::size_t n) {
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t diff = i > j ? i - j : j - i;
      d[i][j] = static_cast<std::int64_t>(std::min(diff, n - diff));
    }
  }
  return Metric::from_rationals(d);
}

FiniteMetricAction random_action(std::mt19937_64& rng, const RandomModelOptions& options) {
  if (options.min_points < 1 || options.min_points > options.max_points) {
    throw Error(ErrorCode::kInvalidArgument, "invalid point range");
  }
  const GroupSpec spec = model_spec(options.group);

  std::vector<Component> parts;
  if (options.transitive) {
    parts.push_back(random_component(rng, options.group, options.min_points, options.max_points));
  } else {
    const std::size_t count = options.group == "z" ? uniform(rng, 2, 3) : 2;
    const std::size_t share = options.max_points / count;
    const std::size_t floor = options.group == "z" ? 1 : 4;
    if (share < floor) throw Error(ErrorCode::kInvalidArgument, "too few points for several orbits");
    for (std::size_t i = 0; i < count; ++i) {
      parts.push_back(random_component(rng, options.group, floor, share));
    }
  }

  std::vector<std::size_t> offset;
  std::size_t n = 0;
  for (const auto& c : parts) {
    offset.push_back(n);
    n += c.size;
  }

  const auto& gens = spec.generators();
  std::vector<Permutation> maps(gens.size(), Permutation(n));
  for (std::size_t s = 0; s < gens.size(); ++s) {
    for (std::size_t c = 0; c < parts.size(); ++c) {
      for (std::size_t x = 0; x < parts[c].size; ++x) {
        maps[s][offset[c] + x] = static_cast<std::uint32_t>(offset[c] + parts[c].act(gens[s], x));
      }
    }
  }

  Metric metric = Metric::discrete(n);
  if (options.metric && n > 1) {
    // Shortest paths in the Schreier graph with weights in {1/2, 1, 3/2},
    // components chained through their first points.
    constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::vector<std::int64_t>> w(n, std::vector<std::int64_t>(n, kInf));
    for (std::size_t x = 0; x < n; ++x) w[x][x] = 0;
    auto link = [&](std::size_t x, std::size_t y) {
      if (x == y) return;
      const auto weight = static_cast<std::int64_t>(uniform(rng, 1, 3));
      w[x][y] = w[y][x] = std::min(w[x][y], weight);
    };
    for (const auto& p : maps) {
      for (std::size_t x = 0; x < n; ++x) link(x, p[x]);
    }
    for (std::size_t c = 1; c < parts.size(); ++c) link(offset[c - 1], offset[c]);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) w[i][j] = std::min(w[i][j], w[i][k] + w[k][j]);
      }
    }
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = Rational(w[i][j], 2);
    }
    metric = Metric::from_rationals(d);
  }

  if (options.relabel) {
    const std::vector<std::size_t> pi = shuffled(rng, n);
    std::vector<Permutation> relabeled(maps.size(), Permutation(n));
    for (std::size_t s = 0; s < maps.size(); ++s) {
      for (std::size_t x = 0; x < n; ++x) relabeled[s][pi[x]] = static_cast<std::uint32_t>(pi[maps[s][x]]);
    }
    maps = std::move(relabeled);
    if (!metric.is_discrete()) {
      std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) d[pi[i]][pi[j]] = metric.distance(i, j);
      }
      metric = Metric::from_rationals(d);
    }
  }
  return FiniteMetricAction(spec, std::move(metric), std::move(maps));
}

Scenario random_scenario(std::uint64_t seed, const RandomScenarioOptions& options) {
  if (options.a_fraction < 0 || options.a_fraction > 1 || options.b_fraction < 0 ||
      options.b_fraction > 1) {
    throw Error(ErrorCode::kInvalidArgument, "set fractions must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  FiniteMetricAction action = random_action(rng, options.model);
  const std::size_t n = action.size();
  auto count = [n](double f) {
    return std::min(n, static_cast<std::size_t>(std::llround(f * static_cast<double>(n))));
  };
  const auto a = random_subset(rng, n, count(options.a_fraction));
  const auto b = random_subset(rng, n, count(options.b_fraction));
  std::map<std::string, PointSet> sets;
  sets.emplace("A", PointSet::from_points(n, a));
  sets.emplace("B", PointSet::from_points(n, b));
  ScenarioParams params;
  params.mode = action.exact_mode() ? Mode::kExact : Mode::kMetric;
  return Scenario{"random-" + options.model.group + "-" + std::to_string(seed), std::move(action),
                  std::move(sets), params};
}

}  // namespace dyncomp
