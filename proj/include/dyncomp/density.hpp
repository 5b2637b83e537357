#ifndef DYNCOMP_DENSITY_HPP
#define DYNCOMP_DENSITY_HPP

#include "dyncomp/action.hpp"
#include "dyncomp/group.hpp"
#include "dyncomp/rational.hpp"

#include <span>
#include <vector>

namespace dyncomp {

struct DensityBounds {
  Rational lower;
  Rational upper;
};

// Window densities over the ball B_n:
//   lower = min_x |{s in B_n : s x in A}| / |B_n|, upper = max_x of the same.
// Group elements are counted individually even when they act identically.
DensityBounds folner_density(const FiniteMetricAction& action, const PointSet& a, int n,
                             std::size_t max_cardinality = kDefaultBallCap);
DensityBounds window_density(const FiniteMetricAction& action, const PointSet& a,
                             const ElementSet& window);

// Extremes of mu(A) over invariant probability measures. On a finite model
// the ergodic measures are uniform on orbits, so these are the smallest and
// largest orbit fractions |A ∩ O| / |O|.
DensityBounds exact_density(const FiniteMetricAction& action, const PointSet& a);

// Realized positive distances halved, largest first.
std::vector<Rational> default_epsilon_grid(const FiniteMetricAction& action);

struct EpsilonGap {
  Rational epsilon;
  Rational fattened_upper;  // upper density of A^eps
  Rational shrunk_lower;    // lower density of B^-eps
};

// Every grid value with upper(A^eps) < lower(B^-eps), largest first.
// Throws Error(kNoEpsilonGap) if none works (including when the unfattened
// densities already fail upper(A) < lower(B)).
std::vector<EpsilonGap> density_gap_epsilons(const FiniteMetricAction& action, const PointSet& a,
                                             const PointSet& b, std::span<const Rational> grid);
// The largest working grid value.
EpsilonGap density_gap_epsilon(const FiniteMetricAction& action, const PointSet& a,
                               const PointSet& b, std::span<const Rational> grid);

}  // namespace dyncomp

#endif  // DYNCOMP_DENSITY_HPP
