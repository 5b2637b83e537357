#ifndef DYNCOMP_GROUP_HPP
#define DYNCOMP_GROUP_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dyncomp {

inline constexpr std::size_t kDefaultBallCap = 5'000'000;

enum class GroupFamily { kZd, kHeisenberg };

// Element of Z^d (integer vector) or of the discrete Heisenberg group in the
// normal form (a, b, c) with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(GroupFamily family, std::vector<std::int64_t> coords);

  static GroupElement identity(GroupFamily family, int rank);

  GroupFamily family() const noexcept { return family_; }
  int rank() const noexcept { return static_cast<int>(coords_.size()); }
  const std::vector<std::int64_t>& coords() const noexcept { return coords_; }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  bool is_identity() const noexcept;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  // Lexicographic on coordinates; only meaningful within one group.
  friend std::strong_ordering operator<=>(const GroupElement& lhs,
                                          const GroupElement& rhs) {
    return lhs.coords_ <=> rhs.coords_;
  }

  std::string to_string() const;

 private:
  GroupFamily family_ = GroupFamily::kZd;
  std::vector<std::int64_t> coords_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept;
};

template <typename V>
using ElementMap = std::unordered_map<GroupElement, V, GroupElementHash>;

// Throws Error(kKindMismatch) when g and h live in different groups.
GroupElement mul(const GroupElement& g, const GroupElement& h);
GroupElement inv(const GroupElement& g);

// A supported polynomial-growth group together with a symmetric generating
// set. Construction validates the generating set.
class GroupSpec {
 public:
  static GroupSpec zd(int d);
  static GroupSpec heisenberg();
  // Custom symmetric generating set. Throws ValidationError("group.generators")
  // if it is not symmetric, contains the identity or a duplicate, has the
  // wrong rank, or fails to reach every basis element within
  // kGenerationCheckRadius.
  static GroupSpec with_generators(GroupFamily family, int rank,
                                   std::vector<GroupElement> generators);
  // "z", "z1", "z2", ..., "zd" with d <= 8, "heisenberg" / "h3".
  static GroupSpec parse(std::string_view name);

  static constexpr int kGenerationCheckRadius = 8;

  GroupFamily family() const noexcept { return family_; }
  int rank() const noexcept { return rank_; }
  const std::vector<GroupElement>& generators() const noexcept { return generators_; }
  // Index of the inverse of generator i.
  std::size_t inverse_of(std::size_t i) const { return inverse_index_.at(i); }
  GroupElement identity() const { return GroupElement::identity(family_, rank_); }
  // e_1..e_d for Z^d; a = (1,0,0), b = (0,1,0) for Heisenberg.
  std::vector<GroupElement> basis() const;
  bool has_standard_generators() const;
  std::string name() const;
  // Throws Error(kKindMismatch) unless g belongs to this group.
  void check_member(const GroupElement& g) const;

  friend bool operator==(const GroupSpec& lhs, const GroupSpec& rhs) {
    return lhs.family_ == rhs.family_ && lhs.rank_ == rhs.rank_ &&
           lhs.generators_ == rhs.generators_;
  }

 private:
  GroupSpec(GroupFamily family, int rank, std::vector<GroupElement> generators);
  void validate();

  GroupFamily family_;
  int rank_;
  std::vector<GroupElement> generators_;
  std::vector<std::size_t> inverse_index_;
};

// Breadth-first enumeration of the Cayley graph, one word-length layer at a
// time. Elements come out in canonical order: by layer, then lexicographic.
// Each element remembers the BFS parent p and generator s with element = p*s.
class BallEnumerator {
 public:
  explicit BallEnumerator(GroupSpec spec, std::size_t max_cardinality = kDefaultBallCap);

  const GroupSpec& spec() const noexcept { return spec_; }
  int radius() const noexcept { return static_cast<int>(layer_start_.size()) - 1; }
  // Enumerates the next layer. Throws Error(kBallTooLarge) when the cap would
  // be exceeded.
  void grow();
  void grow_to(int radius);

  const std::vector<GroupElement>& elements() const noexcept { return elements_; }
  std::size_t ball_size(int r) const;
  int word_length(std::size_t index) const { return lengths_[index]; }
  std::optional<std::size_t> find(const GroupElement& g) const;
  // Generator indices w with element = s_{w[0]} * ... * s_{w[k-1]}.
  std::vector<std::size_t> word(std::size_t index) const;

 private:
  GroupSpec spec_;
  std::size_t cap_;
  std::vector<GroupElement> elements_;
  std::vector<int> lengths_;
  std::vector<std::pair<std::size_t, std::size_t>> parent_;  // (parent, generator)
  std::vector<std::size_t> layer_start_;                     // one entry per radius
  ElementMap<std::size_t> index_;
};

// Finite set of group elements in canonical order (word length, then
// lexicographic), without duplicates.
class ElementSet {
 public:
  ElementSet(GroupSpec spec, std::vector<GroupElement> ordered, std::vector<int> lengths);

  // Canonicalizes an arbitrary list: removes duplicates and sorts by word
  // length, computing lengths by BFS (subject to max_cardinality).
  static ElementSet from_elements(const GroupSpec& spec, std::vector<GroupElement> elements,
                                  std::size_t max_cardinality = kDefaultBallCap);

  const GroupSpec& spec() const noexcept { return spec_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  const GroupElement& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<GroupElement>& elements() const noexcept { return elements_; }
  int word_length(std::size_t i) const { return lengths_[i]; }
  int max_word_length() const;
  bool contains(const GroupElement& g) const { return index_.count(g) != 0; }
  std::optional<std::size_t> index_of(const GroupElement& g) const;

  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  friend bool operator==(const ElementSet& lhs, const ElementSet& rhs) {
    return lhs.spec_ == rhs.spec_ && lhs.elements_ == rhs.elements_;
  }

 private:
  GroupSpec spec_;
  std::vector<GroupElement> elements_;
  std::vector<int> lengths_;
  ElementMap<std::size_t> index_;
};

// Elements of word length <= n.
ElementSet ball(const GroupSpec& spec, int n, std::size_t max_cardinality = kDefaultBallCap);

// |B_0|, ..., |B_nmax| without materializing the balls (only two BFS layers
// are kept in memory).
std::vector<std::size_t> ball_sizes(const GroupSpec& spec, int nmax,
                                    std::size_t max_cardinality = kDefaultBallCap);

ElementSet inverse_set(const ElementSet& d);
// {d1 * d2}; throws Error(kKindMismatch) for sets of different groups.
ElementSet product_set(const ElementSet& d1, const ElementSet& d2,
                       std::size_t max_cardinality = kDefaultBallCap);

struct DoublingRadius {
  int radius = 0;
  std::size_t ball = 0;         // |B_N|
  std::size_t double_ball = 0;  // |B_2N|
};

// Least N <= nmax with |B_2N| < m |B_N|. Throws Error(kDoublingNotFound)
// listing the ratio trajectory otherwise.
DoublingRadius find_doubling_radius(const GroupSpec& spec, int m, int nmax,
                                    std::size_t max_cardinality = kDefaultBallCap);

// Least-squares slope of log|B_n| against log n over [nmin, nmax].
double growth_order_fit(const GroupSpec& spec, int nmin, int nmax,
                        std::size_t max_cardinality = kDefaultBallCap);

// Integer growth order recovered from a fit: the nearest integer.
int growth_order_from_fit(double fit);

// 2^ord + 1, the number of families produced by the weak comparison driver.
int comparison_multiplicity(int ord);

}  // namespace dyncomp

#endif  // DYNCOMP_GROUP_HPP
