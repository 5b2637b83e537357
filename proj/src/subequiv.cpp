#include "dyncomp/subequiv.hpp"

#include "dyncomp/error.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace dyncomp {

namespace {

// Permutation of every element of a finite window, computed once.
std::vector<Permutation> permutation_table(const FiniteMetricAction& action, const ElementSet& f) {
  std::vector<Permutation> table;
  table.reserve(f.size());
  for (const auto& g : f) table.push_back(action.permutation(g));
  return table;
}

// counts[x] += |{g : g x in s}|
void accumulate_hits(const std::vector<Permutation>& table, const PointSet& s,
                     std::vector<std::int64_t>& counts) {
  for (const auto& p : table) {
    for (std::size_t x = 0; x < counts.size(); ++x) counts[x] += s.contains(p[x]) ? 1 : 0;
  }
}

// First point where
//   |{g in DD : g x in A^eps}| < sum_k |{g in D : g x in B_k^-eps}|
// fails, if any.
std::optional<std::size_t> step_invariant_violation(const FiniteMetricAction& action,
                                                    const GreedyState& state,
                                                    const std::vector<Permutation>& d_table,
                                                    const std::vector<Permutation>& dd_table) {
  const std::size_t n = action.size();
  std::vector<std::int64_t> lhs(n, 0);
  std::vector<std::int64_t> rhs(n, 0);
  accumulate_hits(dd_table, fatten(action, state.a, state.epsilon), lhs);
  for (const auto& bk : state.b) accumulate_hits(d_table, shrink(action, bk, state.epsilon), rhs);
  for (std::size_t x = 0; x < n; ++x) {
    if (!(lhs[x] < rhs[x])) return x;
  }
  return std::nullopt;
}

}  // namespace

HypothesisReport check_hypothesis(const FiniteMetricAction& action, const PointSet& a,
                                  const PointSet& b, const ElementSet& d, int m,
                                  const Rational& eps) {
  return check_hypothesis(action, a, b, d, product_set(inverse_set(d), d), m, eps);
}

HypothesisReport check_hypothesis(const FiniteMetricAction& action, const PointSet& a,
                                  const PointSet& b, const ElementSet& d,
                                  const ElementSet& d_inv_d, int m, const Rational& eps) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "m must be positive");
  if (d.empty()) throw Error(ErrorCode::kInvalidArgument, "D must be nonempty");
  if (eps < 0) throw Error(ErrorCode::kInvalidArgument, "epsilon must be nonnegative");
  const std::size_t n = action.size();
  HypothesisReport report;
  report.m = m;
  report.epsilon = eps;
  report.d_size = d.size();
  report.dd_size = d_inv_d.size();
  report.lhs.assign(n, 0);
  report.rhs.assign(n, 0);

  const PointSet fat_a = fatten(action, a, eps);
  const PointSet thin_b = shrink(action, b, eps);
  for (const auto& g : d_inv_d) {
    const Permutation p = action.permutation(g);
    for (std::size_t x = 0; x < n; ++x) report.lhs[x] += fat_a.contains(p[x]) ? 1 : 0;
  }
  for (const auto& g : d) {
    const Permutation p = action.permutation(g);
    for (std::size_t x = 0; x < n; ++x) report.rhs[x] += thin_b.contains(p[x]) ? 1 : 0;
  }
  report.min_margin = std::numeric_limits<std::int64_t>::max();
  for (std::size_t x = 0; x < n; ++x) {
    report.rhs[x] *= m;
    const std::int64_t margin = report.rhs[x] - report.lhs[x];
    if (margin < report.min_margin) {
      report.min_margin = margin;
      report.worst_point = x;
    }
  }
  report.holds = report.min_margin > 0;
  return report;
}

SigmaEntry sigma_inverse(std::size_t d_size, int m, std::size_t step) {
  if (d_size == 0 || m < 1 || step < 1 || step > d_size * static_cast<std::size_t>(m)) {
    throw Error(ErrorCode::kInvalidArgument, "step outside 1..m|D|");
  }
  const std::size_t idx = step - 1;
  return {idx % d_size, static_cast<int>(idx / d_size) + 1};
}

bool epsilon_step_admissible(const FiniteMetricAction& action, const PointSet& a,
                             const PointSet& target, const GroupElement& g,
                             const Rational& current, const Rational& next) {
  if (next <= 0 || !(next < current)) return false;
  const GroupElement g_inv = inv(g);
  const PointSet moved = action.act_set(g, a);
  const PointSet pulled_back = action.act_set(g_inv, fatten(action, moved, 3 * next));
  if (!pulled_back.is_subset_of(fatten(action, a, current))) return false;

  const PointSet outside = target.complement();
  const PointSet outside_pulled = action.act_set(g_inv, outside);
  const PointSet pushed = action.act_set(g, fatten(action, outside_pulled, 2 * next));
  return pushed.is_subset_of(fatten(action, outside, current));
}

std::vector<Rational> epsilon_schedule_grid(const FiniteMetricAction& action,
                                            const Rational& current) {
  if (current <= 0) throw Error(ErrorCode::kInvalidArgument, "epsilon must be positive");
  const Rational floor = action.metric().min_positive_distance() / 3;
  std::vector<Rational> grid;
  Rational v = current;
  do {
    v /= 2;
    grid.push_back(v);
  } while (v >= floor);
  return grid;
}

Rational choose_next_epsilon(const FiniteMetricAction& action, const GreedyState& state,
                             const GroupElement& g, int k0, std::span<const Rational> grid) {
  if (k0 < 1 || static_cast<std::size_t>(k0) > state.b.size()) {
    throw Error(ErrorCode::kInvalidArgument, "family index out of range");
  }
  std::vector<Rational> sorted(grid.begin(), grid.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const PointSet& target = state.b[static_cast<std::size_t>(k0 - 1)];
  for (const auto& candidate : sorted) {
    if (epsilon_step_admissible(action, state.a, target, g, state.epsilon, candidate)) {
      return candidate;
    }
  }
  throw Error(ErrorCode::kEpsilonScheduleExhausted,
              "no grid value below " + format_rational(state.epsilon) +
                  " satisfies the step conditions at step " + std::to_string(state.step));
}

GreedyResult greedy_witness(const FiniteMetricAction& action, const PointSet& a,
                            const PointSet& b, const ElementSet& d, int m, const Rational& eps,
                            const GreedyOptions& options) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "m must be positive");
  if (eps <= 0) throw Error(ErrorCode::kInvalidArgument, "greedy construction needs epsilon > 0");
  const ElementSet dd = product_set(inverse_set(d), d);
  const HypothesisReport report = check_hypothesis(action, a, b, d, dd, m, eps);
  if (!report.holds) {
    const std::size_t x = report.worst_point;
    throw Error(ErrorCode::kHypothesisViolated,
                "hypothesis fails at point " + std::to_string(x) + " (L=" +
                    std::to_string(report.lhs[x]) + ", R=" + std::to_string(report.rhs[x]) + ")");
  }

  std::vector<Permutation> d_table;
  std::vector<Permutation> dd_table;
  if (options.check_invariant) {
    d_table = permutation_table(action, d);
    dd_table = permutation_table(action, dd);
  }

  GreedyResult result;
  result.witness.m = m;
  GreedyState state{a, std::vector<PointSet>(static_cast<std::size_t>(m), b), eps, 1};
  result.epsilons.push_back(eps);

  const std::size_t total = d.size() * static_cast<std::size_t>(m);
  for (std::size_t step = 1; step <= total; ++step) {
    const SigmaEntry sigma = sigma_inverse(d.size(), m, step);
    const GroupElement& g = d[sigma.element_index];
    PointSet& target = state.b[static_cast<std::size_t>(sigma.family - 1)];

    const Rational next =
        choose_next_epsilon(action, state, g, sigma.family, epsilon_schedule_grid(action, state.epsilon));

    // U_n = g^-1(B_{n,k0} ∩ (g A_n)^{eps_{n+1}})
    const PointSet landing = target & fatten(action, action.act_set(g, state.a), next);
    PointSet u = action.act_set(inv(g), landing);
    target -= landing;
    state.a -= u;
    state.epsilon = next;
    state.step = step + 1;
    result.epsilons.push_back(next);
    ++result.steps;

    if (u.empty()) {
      ++result.empty_steps;
    } else {
      result.witness.entries.push_back({std::move(u), g, sigma.family});
    }

    if (options.check_invariant) {
      ++result.invariant_checks;
      if (auto x = step_invariant_violation(action, state, d_table, dd_table)) {
        throw Error(ErrorCode::kInvariantBroken, "step invariant fails at point " +
                                                     std::to_string(*x) + " after step " +
                                                     std::to_string(step));
      }
    }
  }
  if (!state.a.empty()) {
    throw Error(ErrorCode::kInvariantBroken,
                "point " + std::to_string(*state.a.first()) + " left uncovered after m|D| steps");
  }
  return result;
}

}  // namespace dyncomp
