// Witness verification. Deliberately shares nothing with the greedy
// constructor: group elements are evaluated as BFS words in the raw generator
// permutations, and sets are handled as plain index vectors.

#include "dyncomp/subequiv.hpp"

#include "dyncomp/error.hpp"

#include <numeric>

namespace dyncomp {

namespace {

class WordEvaluator {
 public:
  explicit WordEvaluator(const FiniteMetricAction& action) : action_(action), bfs_(action.spec()) {}

  const Permutation& permutation(const GroupElement& g) {
    if (auto it = cache_.find(g); it != cache_.end()) return it->second;
    auto idx = bfs_.find(g);
    while (!idx) {
      bfs_.grow();
      idx = bfs_.find(g);
    }
    Permutation p(action_.size());
    std::iota(p.begin(), p.end(), 0u);
    // g = s_1 ... s_k acts as x -> s_1(...(s_k x)).
    for (std::size_t s : bfs_.word(*idx)) {
      const Permutation& gen = action_.generator_maps()[s];
      Permutation next(p.size());
      for (std::size_t x = 0; x < p.size(); ++x) next[x] = p[gen[x]];
      p = std::move(next);
    }
    return cache_.emplace(g, std::move(p)).first->second;
  }

 private:
  const FiniteMetricAction& action_;
  BallEnumerator bfs_;
  ElementMap<Permutation> cache_;
};

VerificationReport failure(std::string violation, std::string message) {
  VerificationReport r;
  r.passed = false;
  r.violation = std::move(violation);
  r.message = std::move(message);
  return r;
}

}  // namespace

VerificationReport verify_witness(const FiniteMetricAction& action, const PointSet& a,
                                  const PointSet& b, const Witness& witness) {
  const std::size_t n = action.size();
  if (witness.m < 1) return failure("family-range", "witness has m < 1");

  for (std::size_t i = 0; i < witness.entries.size(); ++i) {
    const auto& e = witness.entries[i];
    if (e.family < 1 || e.family > witness.m) {
      auto r = failure("family-range", "entry " + std::to_string(i) + " has family " +
                                           std::to_string(e.family) + " outside 1.." +
                                           std::to_string(witness.m));
      r.entry = i;
      r.family = e.family;
      return r;
    }
    if (e.set.universe() != n) {
      auto r = failure("universe", "entry " + std::to_string(i) + " is over the wrong point set");
      r.entry = i;
      return r;
    }
    const auto& spec = action.spec();
    if (e.element.family() != spec.family() || e.element.rank() != spec.rank()) {
      auto r = failure("element", "entry " + std::to_string(i) + " carries an element of another group");
      r.entry = i;
      return r;
    }
  }

  WordEvaluator words(action);
  std::vector<std::vector<std::size_t>> images(witness.entries.size());
  for (std::size_t i = 0; i < witness.entries.size(); ++i) {
    const Permutation& p = words.permutation(witness.entries[i].element);
    for (std::size_t x : witness.entries[i].set.points()) images[i].push_back(p[x]);
  }

  // (a) disjointness within each family
  constexpr std::size_t kFree = static_cast<std::size_t>(-1);
  for (int family = 1; family <= witness.m; ++family) {
    std::vector<std::size_t> owner(n, kFree);
    for (std::size_t i = 0; i < witness.entries.size(); ++i) {
      if (witness.entries[i].family != family) continue;
      for (std::size_t y : images[i]) {
        if (owner[y] != kFree) {
          auto r = failure("disjointness", "translates of entries " + std::to_string(owner[y]) +
                                               " and " + std::to_string(i) + " in family " +
                                               std::to_string(family) + " meet at point " +
                                               std::to_string(y));
          r.family = family;
          r.entry = owner[y];
          r.other_entry = i;
          r.point = y;
          return r;
        }
        owner[y] = i;
      }
    }
  }

  // (b) containment in B
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t y : images[i]) {
      if (!b.contains(y)) {
        auto r = failure("containment", "translate of entry " + std::to_string(i) +
                                            " leaves B at point " + std::to_string(y));
        r.family = witness.entries[i].family;
        r.entry = i;
        r.point = y;
        return r;
      }
    }
  }

  // (c) coverage of A
  std::vector<bool> covered(n, false);
  for (const auto& e : witness.entries) {
    for (std::size_t x : e.set.points()) covered[x] = true;
  }
  for (std::size_t x : a.points()) {
    if (!covered[x]) {
      auto r = failure("coverage", "point " + std::to_string(x) + " of A is not covered");
      r.point = x;
      return r;
    }
  }
  return {};
}

}  // namespace dyncomp
