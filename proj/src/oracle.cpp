#include "dyncomp/driver.hpp"

#include "dyncomp/error.hpp"

#include <set>

namespace dyncomp {

namespace {

class Search {
 public:
  Search(const PointSet& b, std::vector<std::size_t> points, std::vector<Permutation> perms,
         std::size_t max_sets, std::size_t budget)
      : b_(b),
        points_(std::move(points)),
        perms_(std::move(perms)),
        max_sets_(max_sets),
        budget_(budget),
        used_(b.universe(), false),
        in_block_(perms_.size(), false),
        assign_(points_.size(), 0),
        free_b_(b.count()) {}

  bool run() { return dfs(0); }
  std::size_t nodes() const noexcept { return nodes_; }
  const std::vector<std::size_t>& blocks() const noexcept { return blocks_; }
  const std::vector<std::size_t>& assignment() const noexcept { return assign_; }

 private:
  bool place(std::size_t i, std::size_t block, std::size_t y) {
    used_[y] = true;
    --free_b_;
    assign_[i] = block;
    if (dfs(i + 1)) return true;
    used_[y] = false;
    ++free_b_;
    return false;
  }

  bool dfs(std::size_t i) {
    if (++nodes_ > budget_) {
      throw Error(ErrorCode::kSearchBudgetExceeded,
                  "oracle search exceeded " + std::to_string(budget_) + " nodes");
    }
    if (i == points_.size()) return true;
    if (points_.size() - i > free_b_) return false;
    const std::size_t x = points_[i];
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
      const std::size_t y = perms_[blocks_[j]][x];
      if (b_.contains(y) && !used_[y] && place(i, j, y)) return true;
    }
    if (blocks_.size() < max_sets_) {
      for (std::size_t c = 0; c < perms_.size(); ++c) {
        if (in_block_[c]) continue;
        const std::size_t y = perms_[c][x];
        if (!b_.contains(y) || used_[y]) continue;
        blocks_.push_back(c);
        in_block_[c] = true;
        if (place(i, blocks_.size() - 1, y)) return true;
        in_block_[c] = false;
        blocks_.pop_back();
      }
    }
    return false;
  }

  const PointSet& b_;
  std::vector<std::size_t> points_;
  std::vector<Permutation> perms_;
  std::size_t max_sets_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<bool> used_;
  std::vector<bool> in_block_;
  std::vector<std::size_t> blocks_;
  std::vector<std::size_t> assign_;
  std::size_t free_b_;
};

}  // namespace

OracleResult brute_force_subequivalent(const FiniteMetricAction& action, const PointSet& a,
                                       const PointSet& b, const OracleOptions& options) {
  if (options.word_radius < 0 || options.max_sets < 0) {
    throw Error(ErrorCode::kInvalidArgument, "word radius and max sets must be nonnegative");
  }
  OracleResult result;
  std::vector<std::size_t> points = a.points();
  if (points.empty()) {
    result.subequivalent = true;
    result.witness = Witness{};
    return result;
  }

  // Elements acting identically are interchangeable; keep the first in ball order.
  const ElementSet candidates = ball(action.spec(), options.word_radius);
  std::vector<GroupElement> elements;
  std::vector<Permutation> perms;
  std::set<Permutation> seen;
  for (const auto& g : candidates) {
    Permutation p = action.permutation(g);
    if (!seen.insert(p).second) continue;
    elements.push_back(g);
    perms.push_back(std::move(p));
  }

  Search search(b, points, std::move(perms), static_cast<std::size_t>(options.max_sets),
                options.node_budget);
  result.subequivalent = search.run();
  result.nodes = search.nodes();
  if (result.subequivalent) {
    Witness w;
    for (std::size_t j = 0; j < search.blocks().size(); ++j) {
      PointSet set = action.empty_set();
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (search.assignment()[i] == j) set.insert(points[i]);
      }
      w.entries.push_back({std::move(set), elements[search.blocks()[j]], 1});
    }
    result.witness = std::move(w);
  }
  return result;
}

}  // namespace dyncomp
