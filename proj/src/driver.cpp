#include "dyncomp/driver.hpp"

#include "dyncomp/density.hpp"
#include "dyncomp/error.hpp"

#include <sstream>

namespace dyncomp {

namespace {

ElementSet ball_prefix(const BallEnumerator& bfs, int r) {
  const std::size_t count = bfs.ball_size(r);
  std::vector<GroupElement> elements(bfs.elements().begin(),
                                     bfs.elements().begin() + static_cast<std::ptrdiff_t>(count));
  std::vector<int> lengths(count);
  for (std::size_t i = 0; i < count; ++i) lengths[i] = bfs.word_length(i);
  return ElementSet(bfs.spec(), std::move(elements), std::move(lengths));
}

int resolve_ord(const GroupSpec& spec, const WeakComparisonOptions& options,
                std::optional<double>& fit) {
  if (options.ord) {
    if (*options.ord < 0 || *options.ord > 20) {
      throw Error(ErrorCode::kInvalidArgument, "ord must lie in 0..20");
    }
    return *options.ord;
  }
  fit = growth_order_fit(spec, options.fit_nmin, options.fit_nmax, options.ball_cap);
  return growth_order_from_fit(*fit);
}

// Elements of the smallest ball whose images of x exhaust the orbit of x, in
// ball order.
std::vector<GroupElement> covering_elements(const FiniteMetricAction& action, BallEnumerator& bfs,
                                            std::size_t x) {
  std::vector<bool> seen(action.size(), false);
  std::size_t images = 0;
  std::size_t scanned = 0;
  for (int r = 0;; ++r) {
    bfs.grow_to(r);
    const std::size_t before = images;
    for (; scanned < bfs.ball_size(r); ++scanned) {
      const std::size_t y = action.act(bfs.elements()[scanned], x);
      if (!seen[y]) {
        seen[y] = true;
        ++images;
      }
    }
    if (images == action.size() || (r > 0 && images == before)) break;
  }
  return {bfs.elements().begin(), bfs.elements().begin() + static_cast<std::ptrdiff_t>(scanned)};
}

// First fit: the first m candidates h with the h U inside B and pairwise disjoint.
std::optional<std::vector<GroupElement>> fit_translates(const FiniteMetricAction& action,
                                                        const PointSet& b, const PointSet& u,
                                                        std::size_t m,
                                                        const std::vector<GroupElement>& candidates) {
  std::vector<GroupElement> hs;
  PointSet used = action.empty_set();
  for (const auto& h : candidates) {
    const PointSet moved = action.act_set(h, u);
    if (!moved.is_subset_of(b) || moved.intersects(used)) continue;
    used |= moved;
    hs.push_back(h);
    if (hs.size() == m) return hs;
  }
  return std::nullopt;
}

std::string describe_attempts(const std::vector<RadiusAttempt>& attempts) {
  std::ostringstream out;
  out << "no radius N gives both doubling and the hypothesis:";
  for (const auto& t : attempts) {
    out << " [eps=" << format_rational(t.epsilon) << " N=" << t.n << " |B_N|=" << t.ball
        << " |B_2N|=" << t.double_ball;
    if (t.min_margin) {
      out << " margin=" << *t.min_margin;
    } else {
      out << " no doubling";
    }
    out << "]";
  }
  return out.str();
}

}  // namespace

bool orbit_counts_dominated(const FiniteMetricAction& action, const PointSet& a,
                            const PointSet& b) {
  for (const auto& members : orbits(action).members) {
    std::size_t in_a = 0;
    std::size_t in_b = 0;
    for (std::size_t x : members) {
      in_a += a.contains(x) ? 1 : 0;
      in_b += b.contains(x) ? 1 : 0;
    }
    if (in_a > in_b) return false;
  }
  return true;
}

WeakComparisonResult weak_comparison_witness(const FiniteMetricAction& action, const PointSet& a,
                                             const PointSet& b,
                                             const WeakComparisonOptions& options) {
  if (options.nmax < 1) throw Error(ErrorCode::kInvalidArgument, "nmax must be positive");
  const DensityBounds da = exact_density(action, a);
  const DensityBounds db = exact_density(action, b);
  if (!(da.upper < db.lower)) {
    throw Error(ErrorCode::kNoDensityGap, "upper density of A (" + format_rational(da.upper) +
                                              ") is not below lower density of B (" +
                                              format_rational(db.lower) + ")");
  }

  WeakComparisonResult result;
  WeakTrace& trace = result.trace;
  trace.ord = resolve_ord(action.spec(), options, trace.fit);
  trace.m = comparison_multiplicity(trace.ord);
  const int m = trace.m;

  const std::vector<Rational> grid =
      options.epsilon_grid.empty() ? default_epsilon_grid(action) : options.epsilon_grid;
  const std::vector<EpsilonGap> gaps = density_gap_epsilons(action, a, b, grid);

  BallEnumerator bfs(action.spec(), options.ball_cap);
  for (const auto& gap : gaps) {
    for (int n = 1; n <= options.nmax; ++n) {
      bfs.grow_to(2 * n);
      RadiusAttempt attempt;
      attempt.epsilon = gap.epsilon;
      attempt.n = n;
      attempt.ball = bfs.ball_size(n);
      attempt.double_ball = bfs.ball_size(2 * n);
      attempt.doubling = attempt.double_ball < static_cast<std::size_t>(m) * attempt.ball;
      if (!attempt.doubling) {
        trace.attempts.push_back(attempt);
        continue;
      }
      const ElementSet d = ball_prefix(bfs, n);
      const HypothesisReport report =
          check_hypothesis(action, a, b, d, ball_prefix(bfs, 2 * n), m, gap.epsilon);
      attempt.min_margin = report.min_margin;
      trace.attempts.push_back(attempt);
      if (!report.holds) continue;

      GreedyResult greedy =
          greedy_witness(action, a, b, d, m, gap.epsilon, {options.check_invariant});
      const VerificationReport check = verify_witness(action, a, b, greedy.witness);
      if (!check.passed) {
        throw Error(ErrorCode::kInvariantBroken, "greedy witness rejected: " + check.message);
      }
      trace.epsilon = gap.epsilon;
      trace.fattened_upper = gap.fattened_upper;
      trace.shrunk_lower = gap.shrunk_lower;
      trace.n = n;
      trace.ball = attempt.ball;
      trace.double_ball = attempt.double_ball;
      trace.greedy_steps = greedy.steps;
      trace.empty_steps = greedy.empty_steps;
      trace.final_epsilon = greedy.epsilons.back();
      result.witness = std::move(greedy.witness);
      return result;
    }
  }
  throw Error(ErrorCode::kNoSuitableN, describe_attempts(trace.attempts));
}

WeakComparisonOptions replay_options(const WeakTrace& trace, const WeakComparisonOptions& base) {
  WeakComparisonOptions out = base;
  out.ord = trace.ord;
  out.epsilon_grid = {trace.epsilon};
  out.nmax = std::max(base.nmax, trace.n);
  return out;
}

FullComparisonResult full_comparison_witness(const FiniteMetricAction& action, const PointSet& a,
                                             const PointSet& b,
                                             const FullComparisonOptions& options) {
  if (!orbits(action).transitive()) {
    throw Error(ErrorCode::kNotTransitive, "the action has more than one orbit");
  }
  if (!(a.count() < b.count())) {
    throw Error(ErrorCode::kNoMeasureGap, "|A| = " + std::to_string(a.count()) +
                                              " is not below |B| = " + std::to_string(b.count()));
  }
  const std::size_t n = action.size();
  const auto big_n = static_cast<std::int64_t>(n);

  FullComparisonResult result;
  FullTrace& trace = result.trace;
  std::optional<double> fit;
  trace.ord = resolve_ord(action.spec(), options.weak, fit);
  trace.m = comparison_multiplicity(trace.ord);
  const auto m = static_cast<std::size_t>(trace.m);
  BallEnumerator bfs(action.spec(), options.weak.ball_cap);

  // Anchor x: the first point with m translates h_i x distinct and inside B.
  // U: the largest closed metric ball around x that still admits m disjoint
  // translates inside B (first fit in ball order, chosen again for each radius)
  // with m |U| below the gap |B| - |A|.
  trace.neighbourhood = action.empty_set();
  if (b.count() >= m) {
    for (std::size_t x = 0; x < n && !trace.anchor; ++x) {
      const std::vector<GroupElement> candidates = covering_elements(action, bfs, x);
      PointSet u = action.empty_set();
      u.insert(x);
      auto hs = fit_translates(action, b, u, m, candidates);
      if (!hs) continue;
      trace.anchor = x;
      trace.translates = std::move(*hs);

      const auto row = action.metric().neighbours(x);
      u = action.empty_set();
      for (std::size_t i = 0; i < row.size();) {
        PointSet grown = u;
        std::size_t j = i;
        for (; j < row.size() && row[j].raw == row[i].raw; ++j) grown.insert(row[j].point);
        if (!(m * grown.count() < b.count() - a.count())) break;
        auto fit = fit_translates(action, b, grown, m, candidates);
        if (!fit) break;
        u = std::move(grown);
        trace.translates = std::move(*fit);
        trace.radius = action.metric().distance(x, row[i].point);
        i = j;
      }
      if (!u.empty()) {
        trace.punctured = true;
        trace.neighbourhood = u;
      }
    }
  }
  if (!trace.punctured) {
    trace.anchor.reset();
    trace.translates.clear();
  }

  PointSet b_n = b;
  for (const auto& h : trace.translates) b_n -= action.act_set(h, trace.neighbourhood);

  // eps_1 with |B_1^-eps| - |A^eps| > eps |X|: halved distances, then keep halving.
  std::vector<Rational> candidates = default_epsilon_grid(action);
  for (std::size_t i = 0;; ++i) {
    if (i == candidates.size()) candidates.push_back(candidates.back() / 2);
    if (i > 4096) throw Error(ErrorCode::kInternal, "no initial epsilon found");
    const Rational& eps = candidates[i];
    const auto diff = static_cast<std::int64_t>(shrink(action, b_n, eps).count()) -
                      static_cast<std::int64_t>(fatten(action, a, eps).count());
    if (Rational(diff) > eps * big_n) {
      trace.epsilon = eps;
      break;
    }
  }

  PointSet a_n = a;
  Rational eps = trace.epsilon;
  std::optional<std::size_t> last_weak_attempt;
  Witness combined;
  combined.m = 1;

  for (std::size_t index = 0;; ++index) {
    if (a_n.empty()) break;
    if (trace.punctured && a_n.count() < trace.neighbourhood.count() &&
        last_weak_attempt != a_n.count()) {
      last_weak_attempt = a_n.count();
      WeakComparisonOptions weak_options = options.weak;
      weak_options.ord = trace.ord;
      try {
        WeakComparisonResult weak =
            weak_comparison_witness(action, a_n, trace.neighbourhood, weak_options);
        for (auto& e : weak.witness.entries) {
          const GroupElement& h = trace.translates[static_cast<std::size_t>(e.family - 1)];
          combined.entries.push_back({std::move(e.set), mul(h, e.element), 1});
        }
        trace.weak = std::move(weak.trace);
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNoSuitableN && e.code() != ErrorCode::kNoEpsilonGap) throw;
      }
    }
    if (trace.steps >= options.max_steps) {
      throw Error(ErrorCode::kStepBudgetExceeded,
                  "pairing loop stopped after " + std::to_string(trace.steps) + " steps with " +
                      std::to_string(a_n.count()) + " points of A left");
    }
    while (index >= bfs.elements().size()) bfs.grow();
    const GroupElement g = bfs.elements()[index];
    const GroupElement g_inv = inv(g);

    const GreedyState state{a_n, {b_n}, eps, trace.steps + 1};
    const Rational next =
        choose_next_epsilon(action, state, g, 1, epsilon_schedule_grid(action, eps));
    const PointSet landing = b_n & fatten(action, action.act_set(g, a_n), next);
    PointSet u = action.act_set(g_inv, landing);
    const PointSet b_next = b_n - landing;
    const PointSet a_next = a_n - u;

    // g^-1(B_n^-eps_n \ B_{n+1}^-eps_{n+1}) ⊆ A_n^eps_n \ A_{n+1}^eps_{n+1}
    const PointSet lost_b = shrink(action, b_n, eps) - shrink(action, b_next, next);
    const PointSet lost_a = fatten(action, a_n, eps) - fatten(action, a_next, next);
    if (!action.act_set(g_inv, lost_b).is_subset_of(lost_a)) {
      throw Error(ErrorCode::kInvariantBroken,
                  "transfer containment fails at pairing step " + std::to_string(trace.steps + 1));
    }
    const auto margin = static_cast<std::int64_t>(shrink(action, b_next, next).count()) -
                        static_cast<std::int64_t>(fatten(action, a_next, next).count());
    if (!(Rational(margin) > trace.epsilon * big_n)) {
      throw Error(ErrorCode::kInvariantBroken,
                  "measure gap lost at pairing step " + std::to_string(trace.steps + 1));
    }

    ++trace.steps;
    if (!u.empty()) {
      trace.pairing.push_back({index, g, next, u});
      combined.entries.push_back({std::move(u), g, 1});
    }
    a_n = a_next;
    b_n = b_next;
    eps = next;
  }
  trace.terminal = trace.steps + 1;
  trace.remainder = a_n;

  const VerificationReport check = verify_witness(action, a, b, combined);
  if (!check.passed) {
    throw Error(ErrorCode::kInvariantBroken, "combined witness rejected: " + check.message);
  }
  if (!orbit_counts_dominated(action, a, b)) {
    throw Error(ErrorCode::kInvariantBroken, "witness emitted although an orbit count is violated");
  }
  result.witness = std::move(combined);
  return result;
}

}  // namespace dyncomp
