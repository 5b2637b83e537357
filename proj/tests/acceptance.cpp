// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance               all criteria
//   acceptance --criterion 5 a single criterion (exit status reflects it)

#include "dyncomp/density.hpp"
#include "dyncomp/driver.hpp"
#include "dyncomp/error.hpp"
#include "dyncomp/gen.hpp"
#include "dyncomp/scenario.hpp"
#include "dyncomp/subequiv.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace dyncomp;

namespace {

constexpr double kSuiteSeconds = 120.0;
constexpr double kOracleSeconds = 60.0;
constexpr double kGeometrySeconds = 60.0;
constexpr double kDriverSeconds = 60.0;
constexpr int kSoundnessScenarios = 200;
constexpr int kTransferScenarios = 100;

std::string fixture(const std::string& name) {
  return std::string(DYNCOMP_FIXTURE_DIR) + "/" + name + ".json";
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

// ---------------------------------------------------------------------------
// Criteria 1 and 2: greedy soundness over random scenarios.

struct SoundnessRun {
  int scenarios = 0;
  int discarded = 0;
  int verified = 0;
  int within_bound = 0;
  int by_group[3][2] = {};  // [z, z2, heisenberg][exact, metric]
  std::size_t steps = 0;
  std::size_t invariant_checks = 0;
  std::size_t invariant_failures = 0;
  std::size_t max_points = 0;
  std::vector<std::string> failures;
  std::string documents;
  double seconds = 0;
};

SoundnessRun soundness_suite() {
  Stopwatch clock;
  SoundnessRun run;
  const char* groups[] = {"z", "z2", "heisenberg"};
  for (std::uint64_t seed = 1; run.scenarios < kSoundnessScenarios; ++seed) {
    const int gi = static_cast<int>(seed % 3);
    const bool metric = (seed / 3) % 2 == 1;
    RandomScenarioOptions opts;
    opts.model.group = groups[gi];
    opts.model.min_points = 8;
    opts.model.max_points = 144;
    opts.model.metric = metric;
    opts.model.transitive = seed % 5 != 0;
    const Scenario s = random_scenario(seed, opts);
    const PointSet& a = s.set("A");
    const PointSet& b = s.set("B");
    if (a.empty()) {
      ++run.discarded;
      continue;
    }

    // Smallest D = B_r and m (and largest small epsilon) for which the hypothesis holds.
    std::vector<Rational> eps_candidates = default_epsilon_grid(s.action);
    if (eps_candidates.size() > 3) {
      eps_candidates.erase(eps_candidates.begin(), eps_candidates.end() - 3);
    }
    std::optional<std::tuple<int, int, Rational>> choice;
    for (int r = 1; r <= 3 && !choice; ++r) {
      const ElementSet d = ball(s.action.spec(), r);
      const ElementSet dd = ball(s.action.spec(), 2 * r);
      for (int m = 1; m <= 6 && !choice; ++m) {
        for (const auto& eps : eps_candidates) {
          if (check_hypothesis(s.action, a, b, d, dd, m, eps).holds) {
            choice = std::make_tuple(r, m, eps);
            break;
          }
        }
      }
    }
    if (!choice) {
      ++run.discarded;
      continue;
    }
    const auto& [r, m, eps] = *choice;
    ++run.scenarios;
    ++run.by_group[gi][metric ? 1 : 0];
    run.max_points = std::max(run.max_points, s.action.size());
    const ElementSet d = ball(s.action.spec(), r);
    try {
      GreedyOptions greedy_options;
      greedy_options.check_invariant = true;
      const GreedyResult g = greedy_witness(s.action, a, b, d, m, eps, greedy_options);
      run.steps += g.steps;
      run.invariant_checks += g.invariant_checks;
      const bool ok = verify_witness(s.action, a, b, g.witness).passed;
      run.verified += ok ? 1 : 0;
      if (!ok) run.failures.push_back(s.name + ": verifier rejected the witness");
      if (g.witness.entries.size() <= static_cast<std::size_t>(m) * d.size()) ++run.within_bound;
      run.documents += dump_document(witness_to_json(g.witness, s.action.spec()));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kInvariantBroken) ++run.invariant_failures;
      run.failures.push_back(s.name + ": " + std::string(error_code_name(e.code())) + ": " + e.what());
    }
  }
  run.seconds = clock.seconds();
  return run;
}

Outcome criterion1(const SoundnessRun& run) {
  Outcome o;
  o.pass = run.verified == kSoundnessScenarios && run.within_bound == kSoundnessScenarios &&
           run.seconds < kSuiteSeconds && run.max_points <= 144;
  for (const auto& row : run.by_group) {
    for (int count : row) o.pass = o.pass && count > 0;
  }
  std::ostringstream d;
  d << run.verified << "/" << run.scenarios << " verified, " << run.within_bound
    << " within m|D| entries, " << run.discarded << " scenarios without the hypothesis skipped"
    << ", z/z2/heisenberg exact+metric = " << run.by_group[0][0] << "+" << run.by_group[0][1] << "/"
    << run.by_group[1][0] << "+" << run.by_group[1][1] << "/" << run.by_group[2][0] << "+"
    << run.by_group[2][1] << ", max |X| = " << run.max_points << ", " << fmt_seconds(run.seconds)
    << " (limit " << kSuiteSeconds << "s)";
  if (!run.failures.empty()) d << "; first failure: " << run.failures.front();
  o.detail = d.str();
  return o;
}

Outcome criterion2(const SoundnessRun& run) {
  Outcome o;
  o.pass = run.invariant_failures == 0 && run.invariant_checks == run.steps && run.steps > 0 &&
           run.failures.empty();
  std::ostringstream d;
  d << run.invariant_checks << " invariant checks over " << run.steps << " greedy steps, "
    << run.invariant_failures << " violations";
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------------------
// Criterion 3: exhaustive cyclic instances against the oracle.

Permutation cyclic_shift(std::size_t n, std::int64_t k) {
  Permutation p(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto nn = static_cast<std::int64_t>(n);
    p[i] = static_cast<std::uint32_t>(((static_cast<std::int64_t>(i) + k) % nn + nn) % nn);
  }
  return p;
}

std::vector<PointSet> subsets_up_to(std::size_t n, std::size_t k) {
  std::vector<PointSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) > k) continue;
    PointSet s(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) s.insert(i);
    }
    out.push_back(std::move(s));
  }
  return out;
}

Outcome criterion3() {
  Stopwatch clock;
  std::size_t instances = 0, greedy_successes = 0, confirmed = 0, violations = 0, rejected = 0;
  std::string first_problem;
  for (std::size_t n = 1; n <= 8; ++n) {
    const FiniteMetricAction action(GroupSpec::zd(1), Metric::discrete(n),
                                    {cyclic_shift(n, 1), cyclic_shift(n, -1)});
    const Rational eps = resolve_epsilon(action, Rational(0));
    std::vector<ElementSet> ds, dds;
    for (int r = 1; r <= 3; ++r) {
      ds.push_back(ball(action.spec(), r));
      dds.push_back(ball(action.spec(), 2 * r));
    }
    OracleOptions oracle_options;  // word radius 4, at most 3 sets
    for (const auto& a : subsets_up_to(n, 2)) {
      for (const auto& b : subsets_up_to(n, 3)) {
        const OracleResult oracle = brute_force_subequivalent(action, a, b, oracle_options);
        if (!orbit_counts_dominated(action, a, b)) {
          ++violations;
          if (!oracle.subequivalent) {
            ++rejected;
          } else if (first_problem.empty()) {
            first_problem = "oracle accepted an orbit-count violation on Z/" + std::to_string(n);
          }
        }
        for (std::size_t i = 0; i < ds.size(); ++i) {
          for (int m = 1; m <= 2; ++m) {
            ++instances;
            if (!check_hypothesis(action, a, b, ds[i], dds[i], m, eps).holds) continue;
            const GreedyResult g = greedy_witness(action, a, b, ds[i], m, eps);
            if (!verify_witness(action, a, b, g.witness).passed) {
              if (first_problem.empty()) first_problem = "greedy witness rejected on Z/" + std::to_string(n);
              continue;
            }
            ++greedy_successes;
            if (oracle.subequivalent) {
              ++confirmed;
            } else if (first_problem.empty()) {
              first_problem = "oracle refuted a greedy success on Z/" + std::to_string(n);
            }
          }
        }
      }
    }
  }
  const double secs = clock.seconds();
  Outcome o;
  o.pass = confirmed == greedy_successes && rejected == violations && first_problem.empty() &&
           secs < kOracleSeconds;
  std::ostringstream d;
  d << confirmed << "/" << greedy_successes << " greedy successes confirmed, " << rejected << "/"
    << violations << " orbit-count violations decided false, " << instances
    << " (A, B, D, m) instances, " << fmt_seconds(secs) << " (limit " << kOracleSeconds << "s)";
  if (!first_problem.empty()) d << "; " << first_problem;
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------------------
// Criterion 4: ball growth.

Outcome criterion4() {
  Stopwatch clock;
  const auto z2 = ball_sizes(GroupSpec::zd(2), 60);
  int closed_form = 0, doubling = 0;
  for (std::size_t n = 0; n <= 50; ++n) closed_form += z2[n] == 2 * n * n + 2 * n + 1 ? 1 : 0;
  const int m = comparison_multiplicity(2);
  for (std::size_t n = 1; n <= 30; ++n) {
    doubling += z2[2 * n] < static_cast<std::size_t>(m) * z2[n] ? 1 : 0;
  }
  const double fit = growth_order_fit(GroupSpec::heisenberg(), 8, 16);
  const double secs = clock.seconds();
  Outcome o;
  o.pass = closed_form == 51 && doubling == 30 && fit >= 3.6 && fit <= 4.4 && secs < kGeometrySeconds;
  std::ostringstream d;
  d << "|B_N| = 2N^2+2N+1 for " << closed_form << "/51 radii, |B_2N| < " << m << "|B_N| for "
    << doubling << "/30, Heisenberg fit " << fit << ", " << fmt_seconds(secs);
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------------------
// Criterion 5: densities on the bundled fixtures.

const char* const kFixtures[] = {"z8_rotation", "z2_torus_6", "z2_torus_12", "heisenberg_mod4",
                                 "two_orbit_counterexample"};

bool cyclic_transitive(const Scenario& s) {
  return s.action.spec().family() == GroupFamily::kZd && s.action.spec().rank() == 1 &&
         orbits(s.action).transitive();
}

Outcome criterion5() {
  int bracket_checks = 0, bracket_ok = 0, duality_checks = 0, duality_ok = 0;
  int width_checks = 0, width_ok = 0;
  std::string first_width_failure;
  for (const char* name : kFixtures) {
    const Scenario s = load_scenario(fixture(name));
    for (const auto& [set_name, set] : s.sets) {
      const DensityBounds exact = exact_density(s.action, set);
      const DensityBounds exact_c = exact_density(s.action, set.complement());
      ++duality_checks;
      duality_ok += (exact.lower == 1 - exact_c.upper && exact.upper == 1 - exact_c.lower) ? 1 : 0;
      std::optional<Rational> previous;
      for (int n = 0; n <= 6; ++n) {
        const DensityBounds w = folner_density(s.action, set, n);
        const DensityBounds wc = folner_density(s.action, set.complement(), n);
        ++bracket_checks;
        bracket_ok += (w.lower <= exact.lower && exact.upper <= w.upper) ? 1 : 0;
        ++duality_checks;
        duality_ok += (w.lower == 1 - wc.upper) ? 1 : 0;
        if (cyclic_transitive(s)) {
          const Rational width = w.upper - w.lower;
          if (previous) {
            ++width_checks;
            if (width <= *previous) {
              ++width_ok;
            } else if (first_width_failure.empty()) {
              first_width_failure = std::string(name) + " set " + set_name + ": width " +
                                    format_rational(width) + " at n=" + std::to_string(n) +
                                    " after " + format_rational(*previous) + " at n=" +
                                    std::to_string(n - 1);
            }
          }
          previous = width;
        }
      }
    }
  }
  Outcome o;
  o.pass = bracket_ok == bracket_checks && duality_ok == duality_checks && width_ok == width_checks;
  std::ostringstream d;
  d << "bracketing " << bracket_ok << "/" << bracket_checks << ", complement duality " << duality_ok
    << "/" << duality_checks << ", width non-increasing " << width_ok << "/" << width_checks;
  if (!first_width_failure.empty()) d << "; first increase: " << first_width_failure;
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------------------
// Criterion 6: the weak driver on the torus and the Heisenberg quotient.

struct DriverRun {
  Outcome outcome;
  std::string documents;
};

DriverRun criterion6() {
  DriverRun run;
  std::ostringstream d;
  bool pass = true;
  struct Case {
    const char* name;
    int expected_m;
  };
  for (const Case c : {Case{"z2_torus_12", 5}, Case{"heisenberg_mod4", 17}}) {
    Stopwatch clock;
    const Scenario s = load_scenario(fixture(c.name));
    const PointSet& a = s.set("A");
    const PointSet& b = s.set("B");
    const DensityBounds da = exact_density(s.action, a);
    const DensityBounds db = exact_density(s.action, b);
    bool ok = true;
    if (std::string(c.name) == "z2_torus_12") ok = da.upper <= Rational(1, 20) && db.lower >= Rational(2, 5);
    if (std::string(c.name) == "heisenberg_mod4") {
      const ElementSet b1 = ball(s.action.spec(), 1);
      for (std::size_t x = 0; x < s.action.size(); ++x) {
        bool hit = false;
        for (const auto& g : b1) hit = hit || b.contains(s.action.act(g, x));
        ok = ok && hit;
      }
    }
    WeakComparisonOptions opts;
    opts.ord = s.params.ord;
    if (s.params.nmax) opts.nmax = *s.params.nmax;
    try {
      const WeakComparisonResult r = weak_comparison_witness(s.action, a, b, opts);
      const bool verified = verify_witness(s.action, a, b, r.witness).passed;
      const double secs = clock.seconds();
      ok = ok && verified && r.witness.m == c.expected_m && secs < kDriverSeconds;
      d << c.name << ": m=" << r.witness.m << " N=" << r.trace.n << " eps=" << format_rational(r.trace.epsilon)
        << " entries=" << r.witness.entries.size() << (verified ? " verified " : " REJECTED ")
        << fmt_seconds(secs) << "; ";
      run.documents += dump_document(witness_to_json(r.witness, s.action.spec()));
    } catch (const Error& e) {
      ok = false;
      d << c.name << ": " << error_code_name(e.code()) << ": " << e.what() << "; ";
    }
    pass = pass && ok;
  }
  run.outcome.pass = pass;
  run.outcome.detail = d.str();
  if (run.outcome.detail.size() >= 2) run.outcome.detail.resize(run.outcome.detail.size() - 2);
  return run;
}

// ---------------------------------------------------------------------------
// Criterion 7: full comparison on random transitive models.

DriverRun criterion7() {
  Stopwatch clock;
  DriverRun run;
  const char* groups[] = {"z", "z2", "heisenberg"};
  int done = 0, verified = 0, punctured = 0, weak_finish = 0, skipped = 0;
  std::string first_failure;
  for (std::uint64_t seed = 1000; done < kTransferScenarios; ++seed) {
    RandomScenarioOptions opts;
    opts.model.group = groups[seed % 3];
    opts.model.max_points = 64;
    opts.model.metric = (seed / 3) % 2 == 1;
    opts.a_fraction = 0.05 + 0.05 * static_cast<double>(seed % 6);
    opts.b_fraction = opts.a_fraction + 0.05 + 0.05 * static_cast<double>((seed / 6) % 4);
    const Scenario s = random_scenario(seed, opts);
    const PointSet& a = s.set("A");
    const PointSet& b = s.set("B");
    if (!(a.count() < b.count())) {
      ++skipped;
      continue;
    }
    ++done;
    try {
      const FullComparisonResult r = full_comparison_witness(s.action, a, b);
      const bool ok = verify_witness(s.action, a, b, r.witness).passed && r.witness.m == 1;
      verified += ok ? 1 : 0;
      punctured += r.trace.punctured ? 1 : 0;
      weak_finish += r.trace.weak ? 1 : 0;
      if (!ok && first_failure.empty()) first_failure = s.name + ": witness rejected";
      run.documents += dump_document(witness_to_json(r.witness, s.action.spec()));
    } catch (const Error& e) {
      if (first_failure.empty()) {
        first_failure = s.name + ": " + std::string(error_code_name(e.code())) + ": " + e.what();
      }
    }
  }

  // Designated errors.
  int designated = 0, designated_ok = 0;
  auto expect = [&](ErrorCode want, const std::function<void()>& f) {
    ++designated;
    try {
      f();
    } catch (const Error& e) {
      if (e.code() == want) ++designated_ok;
    }
  };
  const Scenario two = load_scenario(fixture("two_orbit_counterexample"));
  expect(ErrorCode::kNotTransitive, [&] { full_comparison_witness(two.action, two.set("A"), two.set("B")); });
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    RandomScenarioOptions opts;
    opts.model.group = groups[seed % 3];
    opts.model.max_points = 64;
    opts.model.transitive = false;
    const Scenario s = random_scenario(seed, opts);
    expect(ErrorCode::kNotTransitive, [&] { full_comparison_witness(s.action, s.set("A"), s.set("B")); });
  }
  const Scenario z8 = load_scenario(fixture("z8_rotation"));
  const PointSet all = z8.action.full_set();
  expect(ErrorCode::kNoMeasureGap, [&] { full_comparison_witness(z8.action, all, all); });
  expect(ErrorCode::kNoMeasureGap, [&] { full_comparison_witness(z8.action, z8.set("B"), z8.set("A")); });
  const Scenario t12 = load_scenario(fixture("z2_torus_12"));
  expect(ErrorCode::kNoMeasureGap, [&] { full_comparison_witness(t12.action, t12.set("B"), t12.set("B")); });

  const double secs = clock.seconds();
  run.outcome.pass = verified == kTransferScenarios && designated_ok == designated && first_failure.empty();
  std::ostringstream d;
  d << verified << "/" << done << " verified (" << punctured << " punctured, " << weak_finish
    << " with a weak finish, " << skipped << " draws without |A| < |B| skipped), designated errors "
    << designated_ok << "/" << designated << ", " << fmt_seconds(secs);
  if (!first_failure.empty()) d << "; first failure: " << first_failure;
  run.outcome.detail = d.str();
  return run;
}

// ---------------------------------------------------------------------------
// Criterion 8: byte-identical documents across repeated runs.

Outcome criterion8() {
  const SoundnessRun s1 = soundness_suite();
  const SoundnessRun s2 = soundness_suite();
  const DriverRun w1 = criterion6();
  const DriverRun w2 = criterion6();
  const DriverRun f1 = criterion7();
  const DriverRun f2 = criterion7();
  const bool same1 = !s1.documents.empty() && s1.documents == s2.documents;
  const bool same6 = !w1.documents.empty() && w1.documents == w2.documents;
  const bool same7 = !f1.documents.empty() && f1.documents == f2.documents;
  Outcome o;
  o.pass = same1 && same6 && same7;
  std::ostringstream d;
  d << "suite 1 " << (same1 ? "identical" : "DIFFERS") << " (" << s1.documents.size() << " bytes), "
    << "suite 6 " << (same6 ? "identical" : "DIFFERS") << " (" << w1.documents.size() << " bytes), "
    << "suite 7 " << (same7 ? "identical" : "DIFFERS") << " (" << f1.documents.size() << " bytes)";
  o.detail = d.str();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-8)")->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::string> titles{
      "",
      "greedy witnesses verified on random scenarios",
      "step invariant after every greedy step",
      "oracle agreement on exhaustive cyclic instances",
      "ball growth and doubling",
      "density bracketing, width monotonicity, duality",
      "weak comparison driver end to end",
      "full comparison on random transitive models",
      "determinism of witness documents",
  };

  bool all_pass = true;
  std::optional<SoundnessRun> soundness;
  auto report = [&](int k, const Outcome& o) {
    std::cout << "criterion " << k << " [" << (o.pass ? "PASS" : "FAIL") << "] " << titles[static_cast<std::size_t>(k)]
              << ": " << o.detail << std::endl;
    all_pass = all_pass && o.pass;
  };
  for (int k = 1; k <= 8; ++k) {
    if (only != 0 && only != k) continue;
    try {
      switch (k) {
        case 1:
        case 2:
          if (!soundness) soundness = soundness_suite();
          report(k, k == 1 ? criterion1(*soundness) : criterion2(*soundness));
          break;
        case 3: report(k, criterion3()); break;
        case 4: report(k, criterion4()); break;
        case 5: report(k, criterion5()); break;
        case 6: report(k, criterion6().outcome); break;
        case 7: report(k, criterion7().outcome); break;
        case 8: report(k, criterion8()); break;
      }
    } catch (const std::exception& e) {
      report(k, Outcome{false, std::string("unexpected exception: ") + e.what()});
    }
  }
  return all_pass ? 0 : 1;
}
