#ifndef DYNCOMP_SUBEQUIV_HPP
#define DYNCOMP_SUBEQUIV_HPP

#include "dyncomp/action.hpp"
#include "dyncomp/group.hpp"
#include "dyncomp/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dyncomp {

// One cover set U together with the group element moving it into the target
// and the family (1-based) it belongs to.
struct WitnessEntry {
  PointSet set;
  GroupElement element;
  int family = 1;

  friend bool operator==(const WitnessEntry&, const WitnessEntry&) = default;
};

// Families 1..m of translated sets certifying A ≺_{m-1} B: within a family
// the translates are pairwise disjoint and inside B, and all sets cover A.
// m = 1 is plain subequivalence.
struct Witness {
  int m = 1;
  std::vector<WitnessEntry> entries;

  friend bool operator==(const Witness&, const Witness&) = default;
};

// Per-point comparison
//   L(x) = |{g in D^-1 D : g x in A^eps}|  against  R(x) = m |{g in D : g x in B^-eps}|.
struct HypothesisReport {
  bool holds = false;
  std::int64_t min_margin = 0;  // min over x of R(x) - L(x)
  std::size_t worst_point = 0;  // first point attaining min_margin
  std::vector<std::int64_t> lhs;
  std::vector<std::int64_t> rhs;
  int m = 1;
  Rational epsilon;
  std::size_t d_size = 0;
  std::size_t dd_size = 0;
};

HypothesisReport check_hypothesis(const FiniteMetricAction& action, const PointSet& a,
                                  const PointSet& b, const ElementSet& d, int m,
                                  const Rational& eps);
// Same, with D^-1 D supplied by the caller (e.g. B_2N for D = B_N).
HypothesisReport check_hypothesis(const FiniteMetricAction& action, const PointSet& a,
                                  const PointSet& b, const ElementSet& d,
                                  const ElementSet& d_inv_d, int m, const Rational& eps);

// Evolving data of the greedy constructor at step n (1-based).
struct GreedyState {
  PointSet a;                // A_n
  std::vector<PointSet> b;   // B_{n,1..m}
  Rational epsilon;          // eps_n
  std::size_t step = 1;
};

// The linear order on D x {1..m}: family-major, D in canonical order.
struct SigmaEntry {
  std::size_t element_index;
  int family;
};
SigmaEntry sigma_inverse(std::size_t d_size, int m, std::size_t step);

// The three conditions on the next epsilon:
//   next < current,
//   g^-1((g A)^{3 next}) ⊆ A^{current},
//   g((g^-1(X \ B))^{2 next}) ⊆ (X \ B)^{current}.
bool epsilon_step_admissible(const FiniteMetricAction& action, const PointSet& a,
                             const PointSet& target, const GroupElement& g,
                             const Rational& current, const Rational& next);

// Candidates current/2, current/4, ... down to and including the first value
// below a third of the smallest positive distance, where every condition
// above holds trivially.
std::vector<Rational> epsilon_schedule_grid(const FiniteMetricAction& action,
                                            const Rational& current);

// Largest grid value admissible for the step (g, k0). Throws
// Error(kEpsilonScheduleExhausted) if none is.
Rational choose_next_epsilon(const FiniteMetricAction& action, const GreedyState& state,
                             const GroupElement& g, int k0, std::span<const Rational> grid);

struct GreedyOptions {
  // Re-check the per-step counting invariant after every step.
  bool check_invariant = true;
};

struct GreedyResult {
  Witness witness;
  std::vector<Rational> epsilons;  // eps_1, ..., eps_{m|D|+1}
  std::size_t steps = 0;
  std::size_t empty_steps = 0;
  std::size_t invariant_checks = 0;
};

// Runs the m|D|-step greedy construction. Throws Error(kHypothesisViolated)
// when check_hypothesis fails and Error(kInvariantBroken) if the step
// invariant or the final coverage ever fails.
GreedyResult greedy_witness(const FiniteMetricAction& action, const PointSet& a,
                            const PointSet& b, const ElementSet& d, int m, const Rational& eps,
                            const GreedyOptions& options = {});

struct VerificationReport {
  bool passed = true;
  std::string violation;  // "family-range", "disjointness", "containment", "coverage"
  int family = 0;
  std::optional<std::size_t> entry;
  std::optional<std::size_t> other_entry;
  std::optional<std::size_t> point;
  std::string message;
};

// Checks a witness from scratch, evaluating group elements as words in the
// raw generator permutations rather than through the action's normal forms.
VerificationReport verify_witness(const FiniteMetricAction& action, const PointSet& a,
                                  const PointSet& b, const Witness& witness);

}  // namespace dyncomp

#endif  // DYNCOMP_SUBEQUIV_HPP
