#include "doctest.h"
#include "support.hpp"

#include <cstdlib>
#include <random>
#include <set>

using namespace testkit;

namespace {

// Points of Z^d with l1 norm <= n, counted over the cube [-n, n]^d.
std::size_t lattice_count(int d, int n) {
  std::size_t count = 0;
  std::vector<int> x(static_cast<std::size_t>(d), -n);
  while (true) {
    int norm = 0;
    for (int v : x) norm += std::abs(v);
    if (norm <= n) ++count;
    std::size_t i = 0;
    while (i < x.size() && x[i] == n) x[i++] = -n;
    if (i == x.size()) break;
    ++x[i];
  }
  return count;
}

GroupElement random_element(std::mt19937_64& rng, const GroupSpec& spec) {
  std::vector<std::int64_t> c(static_cast<std::size_t>(spec.rank()));
  for (auto& v : c) v = static_cast<std::int64_t>(rng() % 21) - 10;
  return GroupElement(spec.family(), c);
}

}  // namespace

TEST_CASE("group law examples") {
  CHECK(mul(z({1, 2}), z({3, -1})) == z({4, 1}));
  CHECK(mul(h(1, 0, 0), h(0, 1, 0)) == h(1, 1, 1));
  CHECK(mul(h(0, 1, 0), h(1, 0, 0)) == h(1, 1, 0));
  for (const auto& g : {z({5, -7}), z({0, 0})}) CHECK(mul(z({0, 0}), g) == g);
  CHECK(mul(h(0, 0, 0), h(2, -3, 4)) == h(2, -3, 4));

  CHECK(inv(z({2, -3})) == z({-2, 3}));
  CHECK(inv(h(1, 1, 1)) == h(-1, -1, 0));
  CHECK(inv(h(0, 0, 0)) == h(0, 0, 0));
  CHECK(inv(z({0})) == z({0}));
}

TEST_CASE("group law rejects mixed kinds") {
  CHECK(code_of([] { mul(z({1, 2, 3}), h(1, 2, 3)); }) == ErrorCode::kKindMismatch);
  CHECK(code_of([] { mul(z({1}), z({1, 2})); }) == ErrorCode::kKindMismatch);
  CHECK(code_of([] { GroupSpec::zd(2).check_member(z({1})); }) == ErrorCode::kKindMismatch);
}

TEST_CASE("random triples satisfy the group axioms") {
  std::mt19937_64 rng(11);
  for (const auto& spec : {GroupSpec::zd(1), GroupSpec::zd(3), GroupSpec::heisenberg()}) {
    const auto e = spec.identity();
    for (int t = 0; t < 1000; ++t) {
      const auto a = random_element(rng, spec);
      const auto b = random_element(rng, spec);
      const auto c = random_element(rng, spec);
      CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
      CHECK(mul(a, inv(a)) == e);
      CHECK(mul(inv(a), a) == e);
      CHECK(mul(a, e) == a);
      CHECK(inv(mul(a, b)) == mul(inv(b), inv(a)));
    }
  }
}

TEST_CASE("ball sizes") {
  CHECK(ball(GroupSpec::zd(2), 0).size() == 1);
  CHECK(ball(GroupSpec::zd(2), 1).size() == 5);
  CHECK(ball(GroupSpec::zd(2), 3).size() == 25);
  CHECK(ball(GroupSpec::heisenberg(), 2).size() == 17);

  SUBCASE("lattice counting") {
    for (int d = 1; d <= 3; ++d) {
      const auto sizes = ball_sizes(GroupSpec::zd(d), 20);
      for (int n = 0; n <= 20; ++n) {
        CHECK_MESSAGE(sizes[static_cast<std::size_t>(n)] == lattice_count(d, n), "d=" << d << " n=" << n);
      }
    }
    const auto z2 = ball_sizes(GroupSpec::zd(2), 50);
    for (std::size_t n = 0; n <= 50; ++n) CHECK(z2[n] == 2 * n * n + 2 * n + 1);
  }

  SUBCASE("Heisenberg radius 2 by hand") {
    const auto spec = GroupSpec::heisenberg();
    const auto& gens = spec.generators();
    std::set<GroupElement> words{h(0, 0, 0)};
    for (const auto& s : gens) {
      words.insert(s);
      for (const auto& t : gens) words.insert(mul(s, t));
    }
    const auto b2 = ball(GroupSpec::heisenberg(), 2);
    CHECK(words.size() == 17);
    CHECK(b2.size() == words.size());
    for (const auto& g : words) CHECK(b2.contains(g));
  }

  SUBCASE("known Heisenberg sizes") {
    const std::vector<std::size_t> expected{1, 5, 17, 53, 135, 299, 593, 1069, 1793};
    CHECK(ball_sizes(GroupSpec::heisenberg(), 8) == expected);
  }

  SUBCASE("ball_sizes agrees with materialized balls") {
    for (const auto& spec : {GroupSpec::zd(2), GroupSpec::heisenberg(), GroupSpec::zd(4)}) {
      const auto sizes = ball_sizes(spec, 5);
      for (int n = 0; n <= 5; ++n) CHECK(ball(spec, n).size() == sizes[static_cast<std::size_t>(n)]);
    }
  }
}

TEST_CASE("ball structure") {
  for (const auto& spec : {GroupSpec::zd(1), GroupSpec::zd(2), GroupSpec::heisenberg()}) {
    const auto b = ball(spec, 5);
    CHECK(inverse_set(b) == b);
    for (std::size_t i = 0; i < b.size(); ++i) {
      const auto i_inv = b.index_of(inv(b[i]));
      REQUIRE(i_inv.has_value());
      CHECK(b.word_length(*i_inv) == b.word_length(i));
      if (i > 0) CHECK(b.word_length(i - 1) <= b.word_length(i));
    }

    BallEnumerator bfs(spec);
    bfs.grow_to(4);
    for (std::size_t i = 0; i < bfs.elements().size(); ++i) {
      const auto w = bfs.word(i);
      CHECK(static_cast<int>(w.size()) == bfs.word_length(i));
      GroupElement g = spec.identity();
      for (auto s : w) g = mul(g, spec.generators()[s]);
      CHECK(g == bfs.elements()[i]);
    }

    const auto sizes = ball_sizes(spec, 8);
    for (int m = 0; m <= 4; ++m) {
      for (int n = 0; m + n <= 8; ++n) {
        CHECK(sizes[static_cast<std::size_t>(m + n)] <=
              sizes[static_cast<std::size_t>(m)] * sizes[static_cast<std::size_t>(n)]);
      }
    }
  }
}

TEST_CASE("product sets") {
  const auto z1 = GroupSpec::zd(1);
  const auto d = ElementSet::from_elements(z1, {z({-1}), z({0}), z({1})});
  const auto dd = product_set(inverse_set(d), d);
  CHECK(dd == ball(z1, 2));
  CHECK(dd.size() == 5);

  for (const auto& spec : {GroupSpec::zd(2), GroupSpec::heisenberg()}) {
    for (int n = 1; n <= 3; ++n) {
      const auto bn = ball(spec, n);
      std::set<GroupElement> products;
      for (const auto& x : bn) {
        for (const auto& y : bn) products.insert(mul(inv(x), y));
      }
      const auto dd2 = product_set(inverse_set(bn), bn);
      CHECK(dd2.size() == products.size());
      for (const auto& g : products) CHECK(dd2.contains(g));
      CHECK(dd2 == ball(spec, 2 * n));
    }
  }
  CHECK(code_of([&] { product_set(ball(GroupSpec::zd(2), 1), ball(GroupSpec::heisenberg(), 1)); }) ==
        ErrorCode::kKindMismatch);
}

TEST_CASE("doubling radius") {
  CHECK(find_doubling_radius(GroupSpec::zd(1), 3, 10).radius == 1);
  const auto z2 = find_doubling_radius(GroupSpec::zd(2), 5, 10);
  CHECK(z2.radius == 1);
  CHECK(z2.ball == 5);
  CHECK(z2.double_ball == 13);

  // Least N by direct scan of ball sizes.
  const auto sizes = ball_sizes(GroupSpec::heisenberg(), 24);
  int least = -1;
  for (int n = 1; n <= 12 && least < 0; ++n) {
    if (sizes[static_cast<std::size_t>(2 * n)] < 17 * sizes[static_cast<std::size_t>(n)]) least = n;
  }
  CHECK(find_doubling_radius(GroupSpec::heisenberg(), 17, 12).radius == least);

  const auto z2sizes = ball_sizes(GroupSpec::zd(2), 60);
  for (std::size_t n = 1; n <= 30; ++n) CHECK(z2sizes[2 * n] < 5 * z2sizes[n]);
  for (int d = 1; d <= 3; ++d) {
    const auto s = ball_sizes(GroupSpec::zd(d), 60);
    const std::size_t m = (std::size_t{1} << d) + 1;
    for (std::size_t n = 1; n <= 30; ++n) CHECK(s[2 * n] < m * s[n]);
  }

  CHECK(code_of([] { find_doubling_radius(GroupSpec::zd(2), 2, 5); }) == ErrorCode::kDoublingNotFound);
  CHECK(code_of([] { find_doubling_radius(GroupSpec::zd(2), 1, 5); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("growth order fit") {
  const double z2 = growth_order_fit(GroupSpec::zd(2), 10, 30);
  CHECK(z2 >= 1.8);
  CHECK(z2 <= 2.2);
  const double z1 = growth_order_fit(GroupSpec::zd(1), 10, 50);
  CHECK(z1 >= 0.9);
  CHECK(z1 <= 1.1);
  const double heis = growth_order_fit(GroupSpec::heisenberg(), 8, 16);
  CHECK(heis >= 3.6);
  CHECK(heis <= 4.4);
  CHECK(growth_order_from_fit(heis) == 4);
  CHECK(comparison_multiplicity(4) == 17);
  CHECK(comparison_multiplicity(2) == 5);
  CHECK(code_of([] { growth_order_fit(GroupSpec::zd(2), 5, 5); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { comparison_multiplicity(-1); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("group specs") {
  CHECK(GroupSpec::parse("z") == GroupSpec::zd(1));
  CHECK(GroupSpec::parse("Z2") == GroupSpec::zd(2));
  CHECK(GroupSpec::parse("h3") == GroupSpec::heisenberg());
  CHECK(GroupSpec::parse("heisenberg").name() == "heisenberg");
  CHECK(GroupSpec::zd(3).name() == "z3");
  CHECK(field_of([] { GroupSpec::parse("sl2"); }) == "group");
  CHECK(field_of([] { GroupSpec::parse("z0"); }) != "<no error>");
  CHECK(field_of([] { GroupSpec::with_generators(GroupFamily::kHeisenberg, 2, {}); }) == "group");

  // Custom generating sets.
  const auto custom = GroupSpec::with_generators(GroupFamily::kZd, 1, {z({2}), z({-2}), z({3}), z({-3})});
  CHECK(custom.generators().size() == 4);
  CHECK(ball(custom, 1).size() == 5);
  CHECK(field_of([] { GroupSpec::with_generators(GroupFamily::kZd, 1, {z({2}), z({-2})}); }) ==
        "group.generators");
  CHECK(field_of([] { GroupSpec::with_generators(GroupFamily::kZd, 1, {z({1})}); }) != "<no error>");
  CHECK(field_of([] {
          GroupSpec::with_generators(GroupFamily::kZd, 1, {z({1}), z({-1}), z({0})});
        }) == "group.generators[2]");
  CHECK(field_of([] {
          GroupSpec::with_generators(GroupFamily::kZd, 1, {z({1}), z({-1}), z({1})});
        }) == "group.generators[2]");
  CHECK(field_of([] { GroupSpec::with_generators(GroupFamily::kZd, 2, {z({1}), z({-1})}); }) ==
        "group.generators[0]");
}

TEST_CASE("ball cap") {
  CHECK(code_of([] { ball(GroupSpec::zd(2), 10, 50); }) == ErrorCode::kBallTooLarge);
  CHECK(code_of([] { ball_sizes(GroupSpec::heisenberg(), 10, 1000); }) == ErrorCode::kBallTooLarge);
  CHECK(ball(GroupSpec::zd(2), 4, 41).size() == 41);
}
