#ifndef DYNCOMP_ACTION_HPP
#define DYNCOMP_ACTION_HPP

#include "dyncomp/group.hpp"
#include "dyncomp/rational.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace dyncomp {

using Permutation = std::vector<std::uint32_t>;

// Subset of the points 0..N-1 of a finite action.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t universe) : bits_(universe) {}

  // Throws Error(kInvalidArgument) for indices outside the universe.
  static PointSet from_points(std::size_t universe, std::span<const std::size_t> points);
  static PointSet full(std::size_t universe);

  std::size_t universe() const noexcept { return bits_.size(); }
  std::size_t count() const noexcept { return bits_.count(); }
  bool empty() const noexcept { return bits_.none(); }
  bool contains(std::size_t x) const { return bits_.test(x); }
  void insert(std::size_t x) { bits_.set(x); }
  void erase(std::size_t x) { bits_.reset(x); }
  std::optional<std::size_t> first() const;
  std::vector<std::size_t> points() const;

  PointSet complement() const;
  bool is_subset_of(const PointSet& other) const { return bits_.is_subset_of(other.bits_); }
  bool intersects(const PointSet& other) const { return bits_.intersects(other.bits_); }

  PointSet& operator|=(const PointSet& other);
  PointSet& operator&=(const PointSet& other);
  PointSet& operator-=(const PointSet& other);
  friend PointSet operator|(PointSet lhs, const PointSet& rhs) { return lhs |= rhs; }
  friend PointSet operator&(PointSet lhs, const PointSet& rhs) { return lhs &= rhs; }
  friend PointSet operator-(PointSet lhs, const PointSet& rhs) { return lhs -= rhs; }
  friend bool operator==(const PointSet& lhs, const PointSet& rhs) { return lhs.bits_ == rhs.bits_; }

 private:
  void check_universe(const PointSet& other) const;

  boost::dynamic_bitset<> bits_;
};

// Finite metric with rational values, stored as integer numerators over a
// common denominator so that every comparison against an epsilon is exact.
class Metric {
 public:
  // All off-diagonal distances equal to 1.
  static Metric discrete(std::size_t n);
  // Validates symmetry, zero diagonal, positivity off the diagonal and the
  // triangle inequality; throws ValidationError("action.metric", ...).
  static Metric from_rationals(const std::vector<std::vector<Rational>>& distances);

  std::size_t size() const noexcept { return n_; }
  bool is_discrete() const noexcept { return discrete_; }
  Rational distance(std::size_t x, std::size_t y) const;
  // Distinct positive distances in increasing order.
  const std::vector<Rational>& positive_distances() const noexcept { return positive_; }
  // Smallest positive distance (1 when there is a single point).
  Rational min_positive_distance() const;

  // Points sorted by distance from x (x itself first), with raw distances.
  struct Neighbour {
    std::int64_t raw;
    std::uint32_t point;
  };
  std::span<const Neighbour> neighbours(std::size_t x) const;
  // Largest raw value strictly below eps, and largest raw value <= eps.
  std::int64_t raw_below(const Rational& eps) const;
  std::int64_t raw_at_most(const Rational& eps) const;

  friend bool operator==(const Metric& lhs, const Metric& rhs) {
    return lhs.n_ == rhs.n_ && lhs.discrete_ == rhs.discrete_ && lhs.scale_ == rhs.scale_ &&
           lhs.raw_ == rhs.raw_;
  }

 private:
  void build_rows();

  std::size_t n_ = 0;
  bool discrete_ = true;
  std::int64_t scale_ = 1;  // distance(x, y) = raw / scale
  std::vector<std::int64_t> raw_;
  std::vector<std::vector<Neighbour>> rows_;
  std::vector<Rational> positive_;
};

// A group acting on a finite metric space through generator permutations.
// Construction checks that the permutations define an action of the group:
// bijectivity, inverse generators act by inverse permutations, and the
// defining relations (commuting generators for Z^d; central commutator for
// Heisenberg). Immutable afterwards.
class FiniteMetricAction {
 public:
  FiniteMetricAction(GroupSpec spec, Metric metric, std::vector<Permutation> generator_maps);

  const GroupSpec& spec() const noexcept { return spec_; }
  const Metric& metric() const noexcept { return metric_; }
  std::size_t size() const noexcept { return metric_.size(); }
  // Exact mode: discrete metric, every fattening below 1 is the identity.
  bool exact_mode() const noexcept { return metric_.is_discrete(); }
  const std::vector<Permutation>& generator_maps() const noexcept { return maps_; }

  // g x. Throws Error(kKindMismatch) if g is not in the acting group.
  std::size_t act(const GroupElement& g, std::size_t x) const;
  Permutation permutation(const GroupElement& g) const;
  PointSet act_set(const GroupElement& g, const PointSet& a) const;

  PointSet empty_set() const { return PointSet(size()); }
  PointSet full_set() const { return PointSet::full(size()); }

 private:
  // P^k(x) in O(1) through the cycle decomposition of P.
  class PowerTable {
   public:
    PowerTable() = default;
    explicit PowerTable(const Permutation& p);
    std::uint32_t apply(std::uint32_t x, std::int64_t k) const;

   private:
    std::vector<std::uint32_t> cycle_of_;
    std::vector<std::uint32_t> position_;
    std::vector<std::vector<std::uint32_t>> cycles_;
  };

  std::uint32_t apply_normal_form(const GroupElement& g, std::uint32_t x) const;

  GroupSpec spec_;
  Metric metric_;
  std::vector<Permutation> maps_;
  std::vector<PowerTable> basis_powers_;  // e_i, or a, b, c for Heisenberg
};

// {x : d(x, A) < eps}; empty for A empty or eps <= 0.
PointSet fatten(const FiniteMetricAction& action, const PointSet& a, const Rational& eps);
// {x in A : d(x, X \ A) > eps}, with d(x, empty) = +infinity.
PointSet shrink(const FiniteMetricAction& action, const PointSet& a, const Rational& eps);

struct Orbits {
  std::vector<std::size_t> orbit_of;             // orbit index per point
  std::vector<std::vector<std::size_t>> members;  // ordered by smallest member
  bool transitive() const noexcept { return members.size() == 1; }
};

Orbits orbits(const FiniteMetricAction& action);

}  // namespace dyncomp

#endif  // DYNCOMP_ACTION_HPP
