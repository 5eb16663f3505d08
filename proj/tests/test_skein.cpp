#include <doctest.h>

#include "skein/error.hpp"
#include "skein/prng.hpp"
#include "skein/skein_space.hpp"

using namespace skein;

namespace {

SkeinBuildConfig small_config(std::size_t depth) {
  SkeinBuildConfig c;
  c.depth = depth;
  c.gammas_per_pair = 2;
  c.grid = Rational(1, 8);
  c.gaps_per_thread = 2;
  c.pair_budget = 2;
  return c;
}

}  // namespace

TEST_CASE("depth zero is the two-point base") {
  SkeinTruncation tr = SkeinTruncation::build(small_config(0));
  REQUIRE(tr.points().size() == 2);
  SkeinDistance d(tr);
  CHECK(d(0, 1) == Rational(1, 2));
  CHECK(d(0, 0) == Rational(0));
  CHECK(tr.order_of(0) == 0);
  CHECK(tr.address(0) == "A");
  CHECK(tr.address(1) == "B");
}

TEST_CASE("depth one expands the base pair with both gammas") {
  SkeinTruncation tr = SkeinTruncation::build(small_config(1));
  REQUIRE(tr.threads().size() == 2);
  for (const auto& inst : tr.threads()) {
    CHECK(inst.anchor1 == 0);
    CHECK(inst.anchor2 == 1);
    CHECK(inst.thread.width() == Rational(1, 2));
  }
  for (int p = 2; p < static_cast<int>(tr.points().size()); ++p)
    CHECK(tr.order_of(p) == 1);
  // a point at coordinate 1/8 sits 1/8 from A and is bound to it
  int p = tr.resolve("(A,B)#g0@1/8");
  SkeinDistance d(tr);
  CHECK(d(p, 0) == Rational(1, 8));
  CHECK(is_bound(tr, p, 0));
  CHECK_FALSE(is_bound(tr, p, 1));
}

TEST_CASE("addresses round-trip through resolve") {
  SkeinTruncation tr = SkeinTruncation::build(small_config(2));
  for (int i = 0; i < static_cast<int>(tr.points().size()); ++i)
    CHECK(tr.resolve(tr.address(i)) == i);
  CHECK_THROWS_AS(tr.resolve("(A,B)#g0@3/7"), Error);
  CHECK_THROWS_AS(tr.resolve("(A,B)#"), Error);
}

TEST_CASE("recursive distance agrees with the shortest-path oracle") {
  SkeinTruncation tr = SkeinTruncation::build(small_config(2));
  auto table = shortest_path_table(tr);
  SkeinDistance d(tr);
  const int n = static_cast<int>(tr.points().size());
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) CHECK(d(i, j) == table[i][j]);
}

TEST_CASE("threads embed isometrically") {
  SkeinTruncation tr = SkeinTruncation::build(small_config(2));
  SkeinDistance d(tr);
  for (const auto& inst : tr.threads()) {
    for (int p : inst.points) {
      CHECK(d(inst.anchor1, p) ==
            inst.thread.distance(Rational(0), tr.points()[p].coordinate));
      CHECK(d(inst.anchor2, p) ==
            inst.thread.distance(Rational(1), tr.points()[p].coordinate));
    }
  }
}

TEST_CASE("orders follow the parent recursion") {
  SkeinTruncation tr = SkeinTruncation::build(small_config(2));
  bool saw_order2 = false;
  for (int i = 0; i < static_cast<int>(tr.points().size()); ++i) {
    const auto& pt = tr.points()[i];
    if (pt.base) {
      CHECK(tr.order_of(i) == 0);
    } else {
      CHECK(tr.order_of(i) ==
            1 + std::max(tr.order_of(pt.parent1), tr.order_of(pt.parent2)));
      if (tr.order_of(i) == 2) saw_order2 = true;
    }
  }
  CHECK(saw_order2);
}

TEST_CASE("boundness matches the width criterion") {
  SkeinTruncation tr = SkeinTruncation::build(small_config(1));
  // width 1/2: bound to the nearer anchor iff distance <= (1-a)/2 = 1/4
  int near = tr.resolve("(A,B)#g0@1/8");
  CHECK(is_bound(tr, near, 0));
  int mid = tr.resolve("(A,B)#g0@1/2");   // gap endpoint, equidistant
  CHECK_FALSE(is_bound(tr, mid, 0));
  CHECK_FALSE(is_bound(tr, mid, 1));
  int far = tr.resolve("(A,B)#g0@1/3");   // nearer to A but 1/3 > (1-a)/2 = 1/4
  CHECK_FALSE(is_bound(tr, far, 0));
}

TEST_CASE("boundness survives materialized descendants") {
  // At depth 2 the thread over (A,B) carries children attached to its
  // interior points; the extensional check must route around them, not
  // through them, and still agree with the closed form.
  SkeinBuildConfig fine = small_config(2);
  fine.grid = Rational(1, 16);
  SkeinTruncation tr = SkeinTruncation::build(fine);
  int near = tr.resolve("(A,B)#g0@1/16");
  CHECK(is_bound(tr, near, 0));
  CHECK_FALSE(is_bound(tr, near, 1));
  int mid = tr.resolve("(A,B)#g0@1/2");
  CHECK_FALSE(is_bound(tr, mid, 0));
  // and for a depth-2 point with its own anchors
  int deep = tr.resolve("(A,(A,B)#g0@1/16)#g0@1/16");
  CHECK(is_bound(tr, deep, 0));
}

TEST_CASE("ancestors descend to the nearer parent inside the ball") {
  SkeinBuildConfig fine = small_config(2);
  fine.grid = Rational(1, 16);
  SkeinTruncation tr = SkeinTruncation::build(fine);
  int base_near = tr.resolve("(A,B)#g0@1/16");
  CHECK(ancestor(tr, base_near, 0) == 0);
  CHECK(ancestor(tr, base_near, 1) == base_near);  // already order 1
  // a depth-2 point close to its order-1 parent
  int deep = -1;
  for (int i = 0; i < static_cast<int>(tr.points().size()); ++i) {
    if (tr.order_of(i) == 2 && tr.points()[i].coordinate == Rational(1, 16)) {
      deep = i;
      break;
    }
  }
  REQUIRE(deep >= 0);
  const auto& inst = tr.threads()[tr.points()[deep].thread];
  Rational w = inst.thread.width();
  SkeinDistance d(tr);
  if (d(deep, inst.anchor1) < Rational(1, 8)) {
    int a = ancestor(tr, deep, 1);
    CHECK(a == inst.anchor1);
    CHECK(pseudo_ancestor(tr, deep) == inst.anchor2);
  }
  // points far from the low skein are rejected
  int stray = tr.resolve("(A,B)#g0@1/2");
  CHECK_THROWS_AS(ancestor(tr, stray, 0), Error);
}

TEST_CASE("stability report accepts the truncation and spots tampering") {
  SkeinBuildConfig fine = small_config(2);
  fine.grid = Rational(1, 16);
  SkeinTruncation tr = SkeinTruncation::build(fine);
  SkeinDistance d(tr);
  std::vector<int> ball;
  std::vector<int> low = tr.generation_upto(1);
  for (int i = 0; i < static_cast<int>(tr.points().size()); ++i) {
    std::optional<Rational> nearest;
    for (int z : low) {
      Rational dd = d(i, z);
      if (!nearest || dd < *nearest) nearest = dd;
    }
    if (nearest && *nearest < Rational(1, 8)) ball.push_back(i);
  }
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < ball.size(); ++i)
    for (std::size_t j = i + 1; j < ball.size(); ++j) pairs.emplace_back(ball[i], ball[j]);
  StabilityVerdict v = stability_report(tr, 1, pairs);
  CHECK(v.accepted);
  CHECK(v.pairs_checked == pairs.size());
  // out-of-ball pairs propagate the ball error
  int stray = tr.resolve("(A,B)#g0@1/2");
  CHECK_THROWS_AS(stability_report(tr, 0, {{stray, 0}}), Error);
}

TEST_CASE("chains keep steps within 1/2") {
  SkeinTruncation tr = SkeinTruncation::build(small_config(2));
  SkeinDistance d(tr);
  CHECK(chain(tr, 0, 1) == std::vector<int>{0, 1});
  Prng rng(11);
  const std::size_t n = tr.points().size();
  for (int trial = 0; trial < 60; ++trial) {
    int p = static_cast<int>(rng.below(n));
    int q = static_cast<int>(rng.below(n));
    auto c = chain(tr, p, q);
    REQUIRE(!c.empty());
    CHECK(c.front() == p);
    CHECK(c.back() == q);
    for (std::size_t s = 1; s < c.size(); ++s) CHECK(d(c[s - 1], c[s]) <= Rational(1, 2));
  }
  // generation-1 point straight to the base pair
  int g1 = tr.resolve("(A,B)#g0@1/8");
  auto c = chain(tr, g1, 1);
  CHECK(c.front() == g1);
  CHECK(c.back() == 1);
}

TEST_CASE("ancestor closure is closed and idempotent") {
  SkeinBuildConfig fine = small_config(2);
  fine.grid = Rational(1, 16);
  SkeinTruncation tr = SkeinTruncation::build(fine);
  CHECK(ancestor_closure(tr, {0, 1}) == std::vector<int>{0, 1});
  int deep = -1;
  for (int i = 0; i < static_cast<int>(tr.points().size()); ++i)
    if (tr.order_of(i) == 2 && tr.points()[i].coordinate == Rational(1, 16)) deep = i;
  REQUIRE(deep >= 0);
  auto closed = ancestor_closure(tr, {deep});
  CHECK(closed.size() >= 2);  // the point plus at least one ancestor
  CHECK(ancestor_closure(tr, closed) == closed);
}

TEST_CASE("isolated point obstructions carry the chain and the budget") {
  SkeinTruncation tr = SkeinTruncation::build(small_config(1));
  ObstructionRecipe r = isolated_point_obstruction(tr, {0, 1}, 0, Rational(2));
  CHECK(r.epsilon == Rational(1, 2));
  CHECK(r.gap_budget == Rational(1, 4));
  CHECK(r.chain == std::vector<int>{0, 1});
  CHECK_THROWS_AS(isolated_point_obstruction(tr, {0}, 0, Rational(2)), Error);
  CHECK_THROWS_AS(isolated_point_obstruction(tr, {0, 0}, 0, Rational(2)), Error);
}

TEST_CASE("registry survives its structural check") {
  SkeinTruncation tr = SkeinTruncation::build(small_config(2));
  CHECK_FALSE(tr.registry_check());
}
