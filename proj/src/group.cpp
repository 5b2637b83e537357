#include "dyncomp/group.hpp"

#include "dyncomp/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <unordered_set>

namespace dyncomp {

// ---------------------------------------------------------------------------
// Elements

GroupElement::GroupElement(GroupFamily family, std::vector<std::int64_t> coords)
    : family_(family), coords_(std::move(coords)) {
  if (family_ == GroupFamily::kHeisenberg && coords_.size() != 3) {
    throw Error(ErrorCode::kInvalidArgument, "Heisenberg elements have three coordinates");
  }
  if (coords_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "group element needs at least one coordinate");
  }
}

GroupElement GroupElement::identity(GroupFamily family, int rank) {
  return GroupElement(family, std::vector<std::int64_t>(static_cast<std::size_t>(rank), 0));
}

bool GroupElement::is_identity() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(), [](std::int64_t c) { return c == 0; });
}

std::string GroupElement::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out << ',';
    out << coords_[i];
  }
  out << ')';
  return out.str();
}

std::size_t GroupElementHash::operator()(const GroupElement& g) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::int64_t c : g.coords()) {
    h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

namespace {

void check_same_group(const GroupElement& g, const GroupElement& h) {
  if (g.family() != h.family() || g.rank() != h.rank()) {
    throw Error(ErrorCode::kKindMismatch,
                "elements " + g.to_string() + " and " + h.to_string() + " live in different groups");
  }
}

}  // namespace

GroupElement mul(const GroupElement& g, const GroupElement& h) {
  check_same_group(g, h);
  std::vector<std::int64_t> c(g.coords());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += h[i];
  if (g.family() == GroupFamily::kHeisenberg) c[2] += g[0] * h[1];
  return GroupElement(g.family(), std::move(c));
}

GroupElement inv(const GroupElement& g) {
  std::vector<std::int64_t> c(g.coords());
  for (auto& x : c) x = -x;
  // (a,b,c)^-1 = (-a,-b,-c+ab)
  if (g.family() == GroupFamily::kHeisenberg) c[2] += g[0] * g[1];
  return GroupElement(g.family(), std::move(c));
}

// ---------------------------------------------------------------------------
// GroupSpec

GroupSpec::GroupSpec(GroupFamily family, int rank, std::vector<GroupElement> generators)
    : family_(family), rank_(rank), generators_(std::move(generators)) {}

GroupSpec GroupSpec::zd(int d) {
  if (d < 1) throw Error(ErrorCode::kInvalidArgument, "Z^d needs d >= 1");
  std::vector<GroupElement> gens;
  for (int i = 0; i < d; ++i) {
    for (int sign : {1, -1}) {
      std::vector<std::int64_t> c(static_cast<std::size_t>(d), 0);
      c[static_cast<std::size_t>(i)] = sign;
      gens.emplace_back(GroupFamily::kZd, std::move(c));
    }
  }
  return with_generators(GroupFamily::kZd, d, std::move(gens));
}

GroupSpec GroupSpec::heisenberg() {
  std::vector<GroupElement> gens{
      GroupElement(GroupFamily::kHeisenberg, {1, 0, 0}),
      GroupElement(GroupFamily::kHeisenberg, {-1, 0, 0}),
      GroupElement(GroupFamily::kHeisenberg, {0, 1, 0}),
      GroupElement(GroupFamily::kHeisenberg, {0, -1, 0}),
  };
  return with_generators(GroupFamily::kHeisenberg, 3, std::move(gens));
}

GroupSpec GroupSpec::with_generators(GroupFamily family, int rank,
                                     std::vector<GroupElement> generators) {
  if (family == GroupFamily::kHeisenberg && rank != 3) {
    throw ValidationError("group", "Heisenberg group has rank 3");
  }
  if (rank < 1) throw ValidationError("group", "rank must be positive");
  GroupSpec spec(family, rank, std::move(generators));
  spec.validate();
  return spec;
}

GroupSpec GroupSpec::parse(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "heisenberg" || lower == "h3") return heisenberg();
  if (lower == "z") return zd(1);
  if (lower.size() >= 2 && lower[0] == 'z') {
    const std::string digits = lower.substr(1);
    if (std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }) &&
        digits.size() <= 2) {
      const int d = std::stoi(digits);
      if (d >= 1 && d <= 8) return zd(d);
    }
  }
  throw ValidationError("group", "unknown group '" + std::string(name) +
                                     "' (expected z1..z8 or heisenberg)");
}

void GroupSpec::validate() {
  const std::string field = "group.generators";
  if (generators_.empty()) throw ValidationError(field, "empty generating set");
  ElementMap<std::size_t> index;
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const auto& g = generators_[i];
    if (g.family() != family_ || g.rank() != rank_) {
      throw ValidationError(field + "[" + std::to_string(i) + "]", "wrong group or rank");
    }
    if (g.is_identity()) {
      throw ValidationError(field + "[" + std::to_string(i) + "]", "identity is not allowed");
    }
    if (!index.emplace(g, i).second) {
      throw ValidationError(field + "[" + std::to_string(i) + "]", "duplicate generator");
    }
  }
  inverse_index_.assign(generators_.size(), 0);
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    auto it = index.find(inv(generators_[i]));
    if (it == index.end()) {
      throw ValidationError(field + "[" + std::to_string(i) + "]",
                            "generating set is not symmetric");
    }
    inverse_index_[i] = it->second;
  }
  if (!has_standard_generators()) {
    // Generation: every basis element must be a short word in the generators.
    BallEnumerator bfs(*this, kDefaultBallCap);
    for (const auto& e : basis()) {
      while (!bfs.find(e)) {
        if (bfs.radius() >= kGenerationCheckRadius) {
          throw ValidationError(field, "generators do not reach " + e.to_string() +
                                           " within radius " +
                                           std::to_string(kGenerationCheckRadius));
        }
        bfs.grow();
      }
    }
  }
}

std::vector<GroupElement> GroupSpec::basis() const {
  std::vector<GroupElement> out;
  if (family_ == GroupFamily::kHeisenberg) {
    out.emplace_back(family_, std::vector<std::int64_t>{1, 0, 0});
    out.emplace_back(family_, std::vector<std::int64_t>{0, 1, 0});
    return out;
  }
  for (int i = 0; i < rank_; ++i) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(rank_), 0);
    c[static_cast<std::size_t>(i)] = 1;
    out.emplace_back(family_, std::move(c));
  }
  return out;
}

bool GroupSpec::has_standard_generators() const {
  const auto b = basis();
  if (generators_.size() != 2 * b.size()) return false;
  for (const auto& e : b) {
    if (std::find(generators_.begin(), generators_.end(), e) == generators_.end()) return false;
  }
  return true;
}

std::string GroupSpec::name() const {
  if (family_ == GroupFamily::kHeisenberg) return "heisenberg";
  return "z" + std::to_string(rank_);
}

void GroupSpec::check_member(const GroupElement& g) const {
  if (g.family() != family_ || g.rank() != rank_) {
    throw Error(ErrorCode::kKindMismatch, "element " + g.to_string() + " is not in " + name());
  }
}

// ---------------------------------------------------------------------------
// BFS

BallEnumerator::BallEnumerator(GroupSpec spec, std::size_t max_cardinality)
    : spec_(std::move(spec)), cap_(max_cardinality) {
  elements_.push_back(spec_.identity());
  lengths_.push_back(0);
  parent_.emplace_back(0, 0);
  layer_start_.push_back(0);
  index_.emplace(elements_.front(), 0);
}

void BallEnumerator::grow() {
  const std::size_t begin = layer_start_.back();
  const std::size_t end = elements_.size();
  const int next_length = radius() + 1;

  std::vector<std::pair<GroupElement, std::pair<std::size_t, std::size_t>>> fresh;
  ElementMap<std::size_t> fresh_index;
  const auto& gens = spec_.generators();
  for (std::size_t i = begin; i < end; ++i) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      GroupElement h = mul(elements_[i], gens[s]);
      if (index_.count(h) || fresh_index.count(h)) continue;
      fresh_index.emplace(h, fresh.size());
      fresh.emplace_back(std::move(h), std::make_pair(i, s));
    }
  }
  if (elements_.size() + fresh.size() > cap_) {
    throw Error(ErrorCode::kBallTooLarge, "ball of radius " + std::to_string(next_length) +
                                              " exceeds the cap of " + std::to_string(cap_) +
                                              " elements");
  }
  std::sort(fresh.begin(), fresh.end(),
            [](const auto& lhs, const auto& rhs) { return lhs.first < rhs.first; });
  layer_start_.push_back(elements_.size());
  for (auto& [g, parent] : fresh) {
    index_.emplace(g, elements_.size());
    elements_.push_back(std::move(g));
    lengths_.push_back(next_length);
    parent_.push_back(parent);
  }
}

void BallEnumerator::grow_to(int r) {
  while (radius() < r) grow();
}

std::size_t BallEnumerator::ball_size(int r) const {
  if (r < 0) return 0;
  if (r >= radius()) return elements_.size();
  return layer_start_[static_cast<std::size_t>(r) + 1];
}

std::optional<std::size_t> BallEnumerator::find(const GroupElement& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> BallEnumerator::word(std::size_t index) const {
  std::vector<std::size_t> w;
  while (index != 0) {
    w.push_back(parent_[index].second);
    index = parent_[index].first;
  }
  std::reverse(w.begin(), w.end());
  return w;
}

// ---------------------------------------------------------------------------
// ElementSet

ElementSet::ElementSet(GroupSpec spec, std::vector<GroupElement> ordered, std::vector<int> lengths)
    : spec_(std::move(spec)), elements_(std::move(ordered)), lengths_(std::move(lengths)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    spec_.check_member(elements_[i]);
    if (!index_.emplace(elements_[i], i).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate element " + elements_[i].to_string());
    }
  }
}

ElementSet ElementSet::from_elements(const GroupSpec& spec, std::vector<GroupElement> elements,
                                     std::size_t max_cardinality) {
  for (const auto& g : elements) spec.check_member(g);
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  BallEnumerator bfs(spec, max_cardinality);
  std::vector<std::pair<int, GroupElement>> keyed;
  keyed.reserve(elements.size());
  for (auto& g : elements) {
    auto idx = bfs.find(g);
    while (!idx) {
      bfs.grow();
      idx = bfs.find(g);
    }
    keyed.emplace_back(bfs.word_length(*idx), std::move(g));
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<GroupElement> ordered;
  std::vector<int> lengths;
  for (auto& [len, g] : keyed) {
    lengths.push_back(len);
    ordered.push_back(std::move(g));
  }
  return ElementSet(spec, std::move(ordered), std::move(lengths));
}

int ElementSet::max_word_length() const {
  return lengths_.empty() ? 0 : *std::max_element(lengths_.begin(), lengths_.end());
}

std::optional<std::size_t> ElementSet::index_of(const GroupElement& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ElementSet ball(const GroupSpec& spec, int n, std::size_t max_cardinality) {
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "ball radius must be nonnegative");
  BallEnumerator bfs(spec, max_cardinality);
  bfs.grow_to(n);
  std::vector<int> lengths(bfs.elements().size());
  for (std::size_t i = 0; i < lengths.size(); ++i) lengths[i] = bfs.word_length(i);
  return ElementSet(spec, bfs.elements(), std::move(lengths));
}

std::vector<std::size_t> ball_sizes(const GroupSpec& spec, int nmax, std::size_t max_cardinality) {
  if (nmax < 0) throw Error(ErrorCode::kInvalidArgument, "radius must be nonnegative");
  // Neighbours of layer r lie in layers r-1, r, r+1, so two layers suffice
  // for deduplication.
  std::vector<std::size_t> sizes{1};
  std::unordered_set<GroupElement, GroupElementHash> previous;
  std::unordered_set<GroupElement, GroupElementHash> current{spec.identity()};
  std::size_t total = 1;
  for (int r = 1; r <= nmax; ++r) {
    std::unordered_set<GroupElement, GroupElementHash> next;
    for (const auto& g : current) {
      for (const auto& s : spec.generators()) {
        GroupElement h = mul(g, s);
        if (previous.count(h) || current.count(h)) continue;
        next.insert(std::move(h));
      }
    }
    total += next.size();
    if (total > max_cardinality) {
      throw Error(ErrorCode::kBallTooLarge, "ball of radius " + std::to_string(r) +
                                                " exceeds the cap of " +
                                                std::to_string(max_cardinality) + " elements");
    }
    sizes.push_back(total);
    previous = std::move(current);
    current = std::move(next);
  }
  return sizes;
}

ElementSet inverse_set(const ElementSet& d) {
  std::vector<std::pair<int, GroupElement>> keyed;
  keyed.reserve(d.size());
  // Word length is inverse-invariant for a symmetric generating set.
  for (std::size_t i = 0; i < d.size(); ++i) keyed.emplace_back(d.word_length(i), inv(d[i]));
  std::sort(keyed.begin(), keyed.end());
  std::vector<GroupElement> ordered;
  std::vector<int> lengths;
  for (auto& [len, g] : keyed) {
    lengths.push_back(len);
    ordered.push_back(std::move(g));
  }
  return ElementSet(d.spec(), std::move(ordered), std::move(lengths));
}

ElementSet product_set(const ElementSet& d1, const ElementSet& d2, std::size_t max_cardinality) {
  if (!(d1.spec() == d2.spec())) {
    throw Error(ErrorCode::kKindMismatch, "product of element sets from different groups");
  }
  std::unordered_set<GroupElement, GroupElementHash> products;
  for (const auto& a : d1) {
    for (const auto& b : d2) products.insert(mul(a, b));
  }
  // Every product has length <= max(d1) + max(d2); the ball of that radius
  // supplies the canonical order.
  const int radius = d1.max_word_length() + d2.max_word_length();
  BallEnumerator bfs(d1.spec(), max_cardinality);
  bfs.grow_to(radius);
  std::vector<GroupElement> ordered;
  std::vector<int> lengths;
  ordered.reserve(products.size());
  for (std::size_t i = 0; i < bfs.elements().size(); ++i) {
    if (products.count(bfs.elements()[i])) {
      ordered.push_back(bfs.elements()[i]);
      lengths.push_back(bfs.word_length(i));
    }
  }
  if (ordered.size() != products.size()) {
    throw Error(ErrorCode::kInternal, "product set escaped the expected ball");
  }
  return ElementSet(d1.spec(), std::move(ordered), std::move(lengths));
}

DoublingRadius find_doubling_radius(const GroupSpec& spec, int m, int nmax,
                                    std::size_t max_cardinality) {
  if (m < 2) throw Error(ErrorCode::kInvalidArgument, "doubling search needs m >= 2");
  if (nmax < 1) throw Error(ErrorCode::kInvalidArgument, "doubling search needs nmax >= 1");
  const auto sizes = ball_sizes(spec, 2 * nmax, max_cardinality);
  std::ostringstream trajectory;
  for (int n = 1; n <= nmax; ++n) {
    const auto bn = sizes[static_cast<std::size_t>(n)];
    const auto b2n = sizes[static_cast<std::size_t>(2 * n)];
    if (b2n < static_cast<std::size_t>(m) * bn) return {n, bn, b2n};
    trajectory << (n > 1 ? ", " : "") << "N=" << n << ": " << b2n << "/" << bn;
  }
  throw Error(ErrorCode::kDoublingNotFound, "no N <= " + std::to_string(nmax) +
                                                " with |B_2N| < " + std::to_string(m) +
                                                "|B_N|; ratios " + trajectory.str());
}

double growth_order_fit(const GroupSpec& spec, int nmin, int nmax, std::size_t max_cardinality) {
  if (nmin < 2 || nmax <= nmin) {
    throw Error(ErrorCode::kInvalidArgument, "growth fit needs 2 <= nmin < nmax");
  }
  const auto sizes = ball_sizes(spec, nmax, max_cardinality);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double count = nmax - nmin + 1;
  for (int n = nmin; n <= nmax; ++n) {
    const double x = std::log(static_cast<double>(n));
    const double y = std::log(static_cast<double>(sizes[static_cast<std::size_t>(n)]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

int growth_order_from_fit(double fit) { return static_cast<int>(std::lround(fit)); }

int comparison_multiplicity(int ord) {
  if (ord < 0 || ord > 20) throw Error(ErrorCode::kInvalidArgument, "growth order out of range");
  return (1 << ord) + 1;
}

}  // namespace dyncomp
