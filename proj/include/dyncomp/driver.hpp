#ifndef DYNCOMP_DRIVER_HPP
#define DYNCOMP_DRIVER_HPP

#include "dyncomp/action.hpp"
#include "dyncomp/group.hpp"
#include "dyncomp/rational.hpp"
#include "dyncomp/subequiv.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace dyncomp {

// ---------------------------------------------------------------------------
// Weak comparison: density gap -> epsilon -> doubling radius N -> greedy on B_N.

struct WeakComparisonOptions {
  std::optional<int> ord;             // growth order; fitted from ball sizes if unset
  int nmax = 12;                      // largest radius N tried for D = B_N
  std::vector<Rational> epsilon_grid; // empty: default_epsilon_grid
  bool check_invariant = true;
  std::size_t ball_cap = kDefaultBallCap;
  int fit_nmin = 8;
  int fit_nmax = 16;
};

struct RadiusAttempt {
  Rational epsilon;
  int n = 0;
  std::size_t ball = 0;         // |B_N|
  std::size_t double_ball = 0;  // |B_2N|
  bool doubling = false;        // |B_2N| < m |B_N|
  // Minimum of R(x) - L(x); only computed when doubling holds.
  std::optional<std::int64_t> min_margin;
};

struct WeakTrace {
  int ord = 0;
  std::optional<double> fit;  // set when ord was fitted
  int m = 0;
  Rational epsilon;
  Rational fattened_upper;
  Rational shrunk_lower;
  int n = 0;
  std::size_t ball = 0;
  std::size_t double_ball = 0;
  std::vector<RadiusAttempt> attempts;
  std::size_t greedy_steps = 0;
  std::size_t empty_steps = 0;
  Rational final_epsilon;
};

struct WeakComparisonResult {
  Witness witness;  // m = 2^ord + 1 families
  WeakTrace trace;
};

// Throws Error with kNoDensityGap, kNoEpsilonGap or kNoSuitableN (the
// message lists the margin trajectory).
WeakComparisonResult weak_comparison_witness(const FiniteMetricAction& action, const PointSet& a,
                                             const PointSet& b,
                                             const WeakComparisonOptions& options = {});

// Options that make a rerun take exactly the recorded choices.
WeakComparisonOptions replay_options(const WeakTrace& trace, const WeakComparisonOptions& base);

// ---------------------------------------------------------------------------
// Full comparison on transitive models: puncture B by translates of a small
// neighbourhood U, pair off A against the rest of B along an enumeration of
// the group, and finish the remainder against U by weak comparison.

struct FullComparisonOptions {
  std::size_t max_steps = 100'000;
  WeakComparisonOptions weak;
};

struct PairingStep {
  std::size_t index = 0;  // position in the ball enumeration
  GroupElement element;
  Rational epsilon;       // eps_{n+1}
  PointSet set;           // U_n
};

struct FullTrace {
  int ord = 0;
  int m = 0;  // number of translates h_0..h_{m-1} and weak families
  bool punctured = false;
  std::optional<std::size_t> anchor;  // x
  std::vector<GroupElement> translates;
  PointSet neighbourhood;             // U (empty if not punctured)
  Rational radius;                    // U = {y : d(x, y) <= radius}
  Rational epsilon;                   // eps_1
  std::vector<PairingStep> pairing;   // nonempty U_n only
  std::size_t steps = 0;              // pairing steps including empty ones
  std::size_t terminal = 0;           // k
  PointSet remainder;                 // A_k
  std::optional<WeakTrace> weak;
};

struct FullComparisonResult {
  Witness witness;  // m = 1
  FullTrace trace;
};

// Throws Error with kNotTransitive, kNoMeasureGap, kStepBudgetExceeded, or
// kInvariantBroken if a transfer containment fails.
FullComparisonResult full_comparison_witness(const FiniteMetricAction& action, const PointSet& a,
                                             const PointSet& b,
                                             const FullComparisonOptions& options = {});

// ---------------------------------------------------------------------------
// Exhaustive search for A ≺ B: an injective map A -> B of the form a -> e a
// with at most max_sets distinct elements e of B_word_radius.

struct OracleOptions {
  int word_radius = 4;
  int max_sets = 3;
  std::size_t node_budget = 10'000'000;
};

struct OracleResult {
  bool subequivalent = false;
  std::optional<Witness> witness;
  std::size_t nodes = 0;
};

// Throws Error(kSearchBudgetExceeded) when the node budget runs out.
OracleResult brute_force_subequivalent(const FiniteMetricAction& action, const PointSet& a,
                                       const PointSet& b, const OracleOptions& options = {});

// |A ∩ O| <= |B ∩ O| on every orbit O.
bool orbit_counts_dominated(const FiniteMetricAction& action, const PointSet& a,
                            const PointSet& b);

}  // namespace dyncomp

#endif  // DYNCOMP_DRIVER_HPP
