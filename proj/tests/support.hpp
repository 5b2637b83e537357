// Small builders shared by the test binaries.
#ifndef DYNCOMP_TESTS_SUPPORT_HPP
#define DYNCOMP_TESTS_SUPPORT_HPP

#include "dyncomp/action.hpp"
#include "dyncomp/error.hpp"
#include "dyncomp/group.hpp"
#include "dyncomp/rational.hpp"
#include "dyncomp/subequiv.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace testkit {

using namespace dyncomp;

inline std::string fixture(const std::string& name) {
  return std::string(DYNCOMP_FIXTURE_DIR) + "/" + name + ".json";
}

inline Rational q(std::int64_t p, std::int64_t d = 1) { return Rational(p, d); }

inline GroupElement z(std::initializer_list<std::int64_t> c) {
  return GroupElement(GroupFamily::kZd, std::vector<std::int64_t>(c));
}
inline GroupElement h(std::int64_t a, std::int64_t b, std::int64_t c) {
  return GroupElement(GroupFamily::kHeisenberg, {a, b, c});
}

inline PointSet pts(std::size_t n, std::initializer_list<std::size_t> xs) {
  std::vector<std::size_t> v(xs);
  return PointSet::from_points(n, v);
}
inline PointSet pts(std::size_t n, const std::vector<std::size_t>& v) {
  return PointSet::from_points(n, v);
}

inline Permutation shift(std::size_t n, std::int64_t k) {
  Permutation p(n);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = static_cast<std::uint32_t>(((static_cast<std::int64_t>(i) + k) % static_cast<std::int64_t>(n) +
                                       static_cast<std::int64_t>(n)) %
                                      static_cast<std::int64_t>(n));
  }
  return p;
}

// Z acting on Z/n by +1, with the given metric (discrete by default).
inline FiniteMetricAction rotation(std::size_t n) {
  return FiniteMetricAction(GroupSpec::zd(1), Metric::discrete(n), {shift(n, 1), shift(n, -1)});
}
inline FiniteMetricAction rotation(std::size_t n, Metric metric) {
  return FiniteMetricAction(GroupSpec::zd(1), std::move(metric), {shift(n, 1), shift(n, -1)});
}

inline Metric cycle_distances(std::size_t n) {
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = i > j ? i - j : j - i;
      d[i][j] = Rational(static_cast<std::int64_t>(std::min(k, n - k)));
    }
  }
  return Metric::from_rationals(d);
}

// Generator maps in the order of GroupSpec::zd(2).generators().
inline std::vector<Permutation> torus_maps(const GroupSpec& spec, std::size_t p, std::size_t qq) {
  std::vector<Permutation> maps;
  for (const auto& g : spec.generators()) {
    Permutation m(p * qq);
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < qq; ++j) {
        const auto ii = static_cast<std::size_t>((static_cast<std::int64_t>(i + p) + g[0]) % static_cast<std::int64_t>(p));
        const auto jj = static_cast<std::size_t>((static_cast<std::int64_t>(j + qq) + g[1]) % static_cast<std::int64_t>(qq));
        m[i * qq + j] = static_cast<std::uint32_t>(ii * qq + jj);
      }
    }
    maps.push_back(std::move(m));
  }
  return maps;
}

inline FiniteMetricAction torus(std::size_t p, std::size_t qq) {
  const auto spec = GroupSpec::zd(2);
  return FiniteMetricAction(spec, Metric::discrete(p * qq), torus_maps(spec, p, qq));
}

// H(Z/k) by left translation, point (a, b, c) stored as a + k b + k^2 c.
inline FiniteMetricAction heisenberg_quotient(std::size_t k) {
  const auto spec = GroupSpec::heisenberg();
  const auto kk = static_cast<std::int64_t>(k);
  auto md = [kk](std::int64_t v) { return ((v % kk) + kk) % kk; };
  std::vector<Permutation> maps;
  for (const auto& g : spec.generators()) {
    Permutation m(k * k * k);
    for (std::int64_t c = 0; c < kk; ++c) {
      for (std::int64_t b = 0; b < kk; ++b) {
        for (std::int64_t a = 0; a < kk; ++a) {
          const std::int64_t na = md(g[0] + a), nb = md(g[1] + b), nc = md(g[2] + c + g[0] * b);
          m[static_cast<std::size_t>(a + kk * b + kk * kk * c)] =
              static_cast<std::uint32_t>(na + kk * nb + kk * kk * nc);
        }
      }
    }
    maps.push_back(std::move(m));
  }
  return FiniteMetricAction(spec, Metric::discrete(k * k * k), std::move(maps));
}

// Direct check of the witness conditions through act(), independent of
// verify_witness.
inline bool witness_sound(const FiniteMetricAction& action, const PointSet& a, const PointSet& b,
                          const Witness& w) {
  PointSet covered(action.size());
  std::vector<PointSet> used(static_cast<std::size_t>(std::max(w.m, 0)), PointSet(action.size()));
  for (const auto& e : w.entries) {
    if (e.family < 1 || e.family > w.m || e.set.universe() != action.size()) return false;
    PointSet moved(action.size());
    for (std::size_t x : e.set.points()) moved.insert(action.act(e.element, x));
    if (moved.count() != e.set.count() || !moved.is_subset_of(b)) return false;
    auto& u = used[static_cast<std::size_t>(e.family - 1)];
    if (u.intersects(moved)) return false;
    u |= moved;
    covered |= e.set;
  }
  return a.is_subset_of(covered);
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(0);
}

template <typename F>
std::string field_of(F&& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.field();
  } catch (const Error&) {
    return "<not a validation error>";
  }
  return "<no error>";
}

}  // namespace testkit

#endif  // DYNCOMP_TESTS_SUPPORT_HPP
