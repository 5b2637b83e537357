#include "dyncomp/density.hpp"

#include "dyncomp/error.hpp"

#include <algorithm>

namespace dyncomp {

DensityBounds window_density(const FiniteMetricAction& action, const PointSet& a,
                             const ElementSet& window) {
  if (window.empty()) throw Error(ErrorCode::kInvalidArgument, "empty window");
  const std::size_t n = action.size();
  std::vector<std::size_t> hits(n, 0);
  for (const auto& s : window) {
    const Permutation p = action.permutation(s);
    for (std::size_t x = 0; x < n; ++x) hits[x] += a.contains(p[x]) ? 1 : 0;
  }
  const auto [lo, hi] = std::minmax_element(hits.begin(), hits.end());
  const auto size = static_cast<std::int64_t>(window.size());
  return {Rational(static_cast<std::int64_t>(*lo), size),
          Rational(static_cast<std::int64_t>(*hi), size)};
}

DensityBounds folner_density(const FiniteMetricAction& action, const PointSet& a, int n,
                             std::size_t max_cardinality) {
  return window_density(action, a, ball(action.spec(), n, max_cardinality));
}

DensityBounds exact_density(const FiniteMetricAction& action, const PointSet& a) {
  const Orbits orb = orbits(action);
  DensityBounds out{Rational(1), Rational(0)};
  for (const auto& members : orb.members) {
    std::int64_t inside = 0;
    for (std::size_t x : members) inside += a.contains(x) ? 1 : 0;
    const Rational fraction(inside, static_cast<std::int64_t>(members.size()));
    out.lower = std::min(out.lower, fraction);
    out.upper = std::max(out.upper, fraction);
  }
  return out;
}

std::vector<Rational> default_epsilon_grid(const FiniteMetricAction& action) {
  std::vector<Rational> grid;
  for (const auto& d : action.metric().positive_distances()) grid.push_back(d / 2);
  if (grid.empty()) grid.push_back(Rational(1, 2));
  std::reverse(grid.begin(), grid.end());
  return grid;
}

std::vector<EpsilonGap> density_gap_epsilons(const FiniteMetricAction& action, const PointSet& a,
                                             const PointSet& b, std::span<const Rational> grid) {
  const DensityBounds da = exact_density(action, a);
  const DensityBounds db = exact_density(action, b);
  if (!(da.upper < db.lower)) {
    throw Error(ErrorCode::kNoEpsilonGap, "upper density of A (" + format_rational(da.upper) +
                                              ") is not below lower density of B (" +
                                              format_rational(db.lower) + ")");
  }
  std::vector<Rational> sorted(grid.begin(), grid.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<EpsilonGap> out;
  for (const auto& eps : sorted) {
    if (eps <= 0) continue;
    const Rational fat = exact_density(action, fatten(action, a, eps)).upper;
    const Rational thin = exact_density(action, shrink(action, b, eps)).lower;
    if (fat < thin) out.push_back({eps, fat, thin});
  }
  if (out.empty()) {
    throw Error(ErrorCode::kNoEpsilonGap, "no grid value separates the densities of A^eps and B^-eps");
  }
  return out;
}

EpsilonGap density_gap_epsilon(const FiniteMetricAction& action, const PointSet& a,
                               const PointSet& b, std::span<const Rational> grid) {
  return density_gap_epsilons(action, a, b, grid).front();
}

}  // namespace dyncomp
