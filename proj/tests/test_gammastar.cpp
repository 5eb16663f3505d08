#include <doctest.h>

#include "skein/error.hpp"
#include "skein/gammastar.hpp"
#include "skein/json_io.hpp"
#include "skein/prng.hpp"
#include "skein/verify.hpp"

using namespace skein;

namespace {

std::vector<FamilyThread> acceptance_family() {
  return {{GapStream(GammaSequence::half_bound()), Rational(1, 2), "T1"},
          {GapStream(GammaSequence::half_bound()), Rational(1, 3), "T2"},
          {GapStream(GammaSequence::half_bound()), Rational(1, 4), "T3"}};
}

}  // namespace

TEST_CASE("step one of the diagonal construction") {
  // Hand arithmetic: bound = 2^-2 * (1/4) / 2 = 1/32, alpha/K = (1/8)/2 = 1/16,
  // gamma*_1 = (1/2) min(1/32, 1/16) = 1/64.
  GammaStarRun run = gamma_star_prefix(acceptance_family(), Rational(2), Rational(1, 4), 1);
  REQUIRE(run.produced.size() == 1);
  CHECK(run.produced[0] == Rational(1, 64));
  CHECK(run.trace[0].n_omega == 1);
  CHECK(run.trace[0].alpha_omega == Rational(1, 8));
}

TEST_CASE("k_max zero is an empty run") {
  GammaStarRun run = gamma_star_prefix(acceptance_family(), Rational(2), Rational(1, 4), 0);
  CHECK(run.produced.empty());
  CHECK(run.trace.empty());
}

TEST_CASE("the factorial guard rejects oversized runs") {
  CHECK_THROWS_AS(gamma_star_prefix(acceptance_family(), Rational(2), Rational(1, 4), 8),
                  Error);
}

TEST_CASE("five-step run satisfies the bound and rechecks") {
  GammaStarRun run = gamma_star_prefix(acceptance_family(), Rational(2), Rational(1, 4), 5);
  REQUIRE(run.produced.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    Rational bound = Rational::pow2(-static_cast<int>(i) - 2) * Rational(1, 4) / Rational(2);
    CHECK(run.produced[i] < bound);
    CHECK(run.produced[i].sign() > 0);
    if (i > 0) CHECK(run.produced[i] < run.produced[i - 1]);
  }
  CHECK(run.trace[4].orderings.size() == 24);  // |Omega_4|
  CHECK_FALSE(recheck_trace(run));
  // the produced prefix is admissible as a gamma sequence
  CHECK(validate_gamma(run.produced).accepted);
}

TEST_CASE("deepening budget and measure preconditions are enforced") {
  GammaStarOptions tight;
  tight.deepening_budget = 2;
  CHECK_THROWS_AS(gamma_star_prefix(acceptance_family(), Rational(2), Rational(1, 4), 4, tight),
                  Error);
  // eps = 7/8 exceeds every truncation measure bound once a couple gaps exist
  CHECK_THROWS_AS(gamma_star_prefix(acceptance_family(), Rational(2), Rational(7, 8), 3),
                  Error);
}

TEST_CASE("jump certificates on the acceptance fixtures") {
  Thread ta = fixture_ta();
  JumpCertificate tiny = jump_infeasibility(ta, {Rational(1, 64)}, Rational(2), 1);
  CHECK_FALSE(tiny.feasible);
  CHECK(tiny.explored > 0);

  JumpCertificate boundary = jump_infeasibility(ta, {Rational(1, 8)}, Rational(1), 1);
  CHECK(boundary.feasible);
  REQUIRE(boundary.assignment.size() == 1);
  CHECK(boundary.assignment[0] == 1);

  JumpCertificate vacuous = jump_infeasibility(ta, {}, Rational(2), 0);
  CHECK(vacuous.feasible);

  // one slot can cover a contiguous block when its budget can span it
  Thread two(Rational(1), Rational(1), {{Rational(1, 4), Rational(5, 16)},
                                        {Rational(3, 8), Rational(7, 16)}});
  JumpCertificate block = jump_infeasibility(two, {Rational(3, 16)}, Rational(1), 2);
  CHECK(block.feasible);
  JumpCertificate split = jump_infeasibility(two, {Rational(1, 16), Rational(1, 16)},
                                             Rational(1), 2);
  CHECK(split.feasible);  // one slot per gap
  JumpCertificate starved = jump_infeasibility(two, {Rational(1, 16)}, Rational(1), 2);
  CHECK_FALSE(starved.feasible);  // a single 1/16 budget cannot span both

  CHECK_THROWS_AS(jump_infeasibility(ta, {Rational(1, 2)}, Rational(2), 1), Error);
  CHECK_THROWS_AS(jump_infeasibility(ta, {Rational(1, 64)}, Rational(2), 7), Error);
}

TEST_CASE("brute force search on segments finds the identity") {
  Thread line = fixture_line();
  auto found = brute_force_map_search(line, line, Rational(1), Rational(1, 4));
  REQUIRE(found);
  CHECK(found->support() == found->values());
  CHECK(lip_const(*found) <= Rational(1));
}

TEST_CASE("no 0-Lipschitz endpoint-fixing map exists") {
  Thread line = fixture_line();
  CHECK_FALSE(brute_force_map_search(line, line, Rational(0), Rational(1, 4)));
}

TEST_CASE("found maps are exactly K-Lipschitz monotone endpoint-fixing") {
  Thread source = fixture_half();
  Thread target = fixture_ta();
  auto found = brute_force_map_search(source, target, Rational(2), Rational(1, 16));
  REQUIRE(found);
  CHECK(found->non_decreasing());
  CHECK(found->endpoint_fixing());
  CHECK(lip_const(*found) <= Rational(2));
}

TEST_CASE("search guard trips on oversized state spaces") {
  BruteForceOptions tiny;
  tiny.state_guard = 4;
  CHECK_THROWS_AS(
      brute_force_map_search(fixture_line(), fixture_line(), Rational(1), Rational(1, 8), tiny),
      Error);
}

namespace {

// Literal reference decision: enumerate every non-decreasing endpoint-fixing
// assignment of target values to source support points and test its exact
// Lipschitz constant. Exponential, so instances stay tiny.
std::optional<std::vector<Rational>> literal_search(const Thread& source, const Thread& target,
                                                    const Rational& k,
                                                    const Rational& grid) {
  std::vector<Rational> xs = source.support_points(grid);
  std::vector<Rational> vs = target.support_points(grid);
  std::vector<std::size_t> pick(xs.size(), 0);
  pick.back() = vs.size() - 1;
  std::optional<std::vector<Rational>> best;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t from) {
    if (best) return;
    if (i + 1 == xs.size()) {
      std::vector<Rational> values;
      for (std::size_t p = 0; p < xs.size(); ++p) values.push_back(vs[pick[p]]);
      PLMap f(source, target, xs, values);
      if (lip_const(f) <= k) best = values;
      return;
    }
    for (std::size_t v = from; v < vs.size() && !best; ++v) {
      pick[i] = v;
      rec(i + 1, v);
    }
  };
  if (xs.size() < 2) return std::nullopt;
  rec(1, 0);
  return best;
}

}  // namespace

TEST_CASE("reachability search agrees with literal enumeration on tiny instances") {
  Prng rng(29);
  std::vector<Thread> pool = {
      Thread(Rational(1), Rational(1), {}),
      Thread(Rational(1), Rational(1, 2), {}),
      Thread(Rational(1), Rational(1, 2), {{Rational(1, 4), Rational(1, 2)}}),
      Thread(Rational(1), Rational(1, 3), {{Rational(1, 2), Rational(3, 4)}}),
      Thread(Rational(1), Rational(1, 4), {{Rational(1, 4), Rational(3, 8)},
                                           {Rational(1, 2), Rational(5, 8)}}),
  };
  std::vector<Rational> ks = {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)};
  std::size_t found = 0, none = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Thread& source = rng.pick(pool);
    const Thread& target = rng.pick(pool);
    const Rational& k = ks[static_cast<std::size_t>(rng.below(ks.size()))];
    Rational grid = rng.coin() ? Rational(1, 4) : Rational(1, 3);
    auto fast = brute_force_map_search(source, target, k, grid);
    auto slow = literal_search(source, target, k, grid);
    REQUIRE(fast.has_value() == slow.has_value());
    if (fast) {
      ++found;
      CHECK(lip_const(*fast) <= k);
      // the reconstruction is the lexicographically least qualifying map
      CHECK(fast->values() == *slow);
    } else {
      ++none;
    }
  }
  CHECK(found > 0);
  CHECK(none > 0);
}

TEST_CASE("feasible certificates satisfy their own span bounds") {
  Prng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    // random target with 2-3 disjoint gaps on a coarse lattice
    std::vector<OpenInterval> gaps;
    Rational cursor(1, 16);
    while (gaps.size() < 3 && cursor < Rational(3, 4)) {
      Rational len(1, static_cast<long>(16 + 16 * rng.below(4)));
      if (rng.coin()) gaps.push_back({cursor, cursor + len});
      cursor += Rational(1, 4);
    }
    if (gaps.size() < 2) continue;
    Thread target(Rational(1), Rational(1), gaps);
    std::vector<Rational> budgets;
    for (std::size_t i = 0; i < 1 + rng.below(3); ++i)
      budgets.push_back(Rational(1, static_cast<long>(4 + 4 * rng.below(8)))); 
    std::sort(budgets.begin(), budgets.end(), std::greater<Rational>());
    budgets.erase(std::unique(budgets.begin(), budgets.end()), budgets.end());
    bool precondition_ok = true;
    for (const auto& b : budgets)
      if (b * Rational(2) >= target.width()) precondition_ok = false;
    if (!precondition_ok) continue;
    std::size_t m = 1 + rng.below(gaps.size());
    JumpCertificate cert = jump_infeasibility(target, budgets, Rational(2), m);
    if (!cert.feasible) continue;
    // replay the assignment: every slot's block must obey K*budget >= span
    REQUIRE(cert.assignment.size() == m);
    for (std::size_t slot = 1; slot <= budgets.size(); ++slot) {
      std::vector<OpenInterval> block;
      for (std::size_t i = 0; i < m; ++i)
        if (cert.assignment[i] == slot) block.push_back(cert.target_gaps[i]);
      if (block.empty()) continue;
      CHECK(Rational(2) * budgets[slot - 1] >= jump_span(block));
    }
  }
}
