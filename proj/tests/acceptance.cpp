// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Every expected value is pinned exactly; runtime budgets are
// asserted alongside the functional checks.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "skein/emit.hpp"
#include "skein/error.hpp"
#include "skein/gammastar.hpp"
#include "skein/json_io.hpp"
#include "skein/prng.hpp"
#include "skein/verify.hpp"

using namespace skein;

namespace {

struct Criterion {
  int number;
  std::string title;
  double budget_seconds;
  std::function<std::optional<std::string>()> run;
};

// ---------- criterion 1 ----------

std::optional<std::string> thread_metric_exactness() {
  for (const Thread& t : {fixture_ta(), fixture_line()}) {
    if (t.distance(Rational(0), t.length()) != t.width())
      return "d(0,l) != width on a fixture";
    std::vector<Rational> pts = t.support_points(t.length() / Rational(64));
    const std::size_t n = pts.size();
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = t.distance(pts[i], pts[j]);
    for (std::size_t i = 0; i < n; ++i) {
      if (!d[i][i].is_zero()) return "identity fails";
      for (std::size_t j = i + 1; j < n; ++j)
        if (d[i][j] != d[j][i] || d[i][j].sign() <= 0) return "symmetry/positivity fails";
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t m = 0; m < n; ++m)
          if (d[i][j] > d[i][m] + d[m][j])
            return "triangle inequality fails at (" + pts[i].str() + "," + pts[j].str() + "," +
                   pts[m].str() + ")";
  }
  return std::nullopt;
}

// ---------- criterion 2 ----------

std::optional<std::string> cantor_construction() {
  // Independent oracle: re-simulate the minimal-index rule from scratch with
  // its own enumeration and interval logic.
  std::vector<std::pair<Rational, Rational>> oracle;
  {
    std::vector<Rational> listed;
    unsigned long den = 1, num = 0;
    auto next_rational = [&]() {
      for (;;) {
        if (num + 1 < den) {
          ++num;
        } else {
          ++den;
          num = 1;
        }
        if (std::gcd(num, den) == 1) return Rational(mpq_class(num, den));
      }
    };
    for (int i = 1; i <= 64; ++i) {
      Rational gamma_i = Rational::pow2(-i - 2);
      for (std::size_t n = 1;; ++n) {
        while (listed.size() < n) listed.push_back(next_rational());
        Rational lo = listed[n - 1], hi = listed[n - 1] + gamma_i;
        if (hi > Rational(1)) continue;
        bool clear = true;
        for (const auto& [gl, gr] : oracle) {
          Rational il = max(lo, gl), ir = min(hi, gr);
          if (il < ir) {
            clear = false;
            break;
          }
        }
        if (clear) {
          oracle.emplace_back(lo, hi);
          break;
        }
      }
    }
  }
  if (oracle[0] != std::pair(Rational(1, 2), Rational(5, 8)))
    return "oracle gap 1 disagrees with the pinned value";
  if (oracle[1] != std::pair(Rational(1, 3), Rational(1, 3) + Rational(1, 16)))
    return "oracle gap 2 disagrees with the pinned value";
  if (oracle[2] != std::pair(Rational(2, 3), Rational(2, 3) + Rational(1, 32)))
    return "oracle gap 3 disagrees with the pinned value";

  GapStream stream(GammaSequence::half_bound());
  for (int k = 1; k <= 64; ++k) {
    OpenInterval g = stream.next();
    if (g.left != oracle[k - 1].first || g.right != oracle[k - 1].second)
      return "stream gap " + std::to_string(k) + " disagrees with the oracle";
    if (g.length() != Rational::pow2(-k - 2))
      return "gap " + std::to_string(k) + " length differs from gamma";
    Thread t(Rational(1), Rational(1, 2), stream.emitted());
    if (t.measure() <= Rational(1, 2))
      return "measure after " + std::to_string(k) + " gaps is not above 1/2";
  }
  return std::nullopt;
}

// ---------- criterion 3 ----------

std::optional<std::string> lipschitz_lemma_suite() {
  const std::uint64_t seed = 7;
  const std::size_t n_maps = 500;
  Prng rng(seed);
  std::size_t jump_checks = 0, witnesses = 0;
  for (std::size_t i = 0; i < n_maps; ++i) {
    PLMap f = random_endpoint_fixing_map(rng);
    Rational before = lip_const(f);
    PLMap g = monotone_regularize(f);
    if (lip_const(g) > before)
      return "map " + std::to_string(i) + ": regularization raised the constant";
    if (!g.non_decreasing() || !g.endpoint_fixing())
      return "map " + std::to_string(i) + ": regularization broke shape";
    for (const auto& cs : g.codomain().gaps()) {
      OpenInterval ct = find_jumping_gap(g, cs);
      if (!jumps_over(g, ct, cs))
        return "map " + std::to_string(i) + ": found gap fails to jump";
      ++jump_checks;
    }
    for (const auto& record : jump_records(g)) {
      for (long kk : {1L, 2L, 3L}) {
        Rational k(kk);
        if (record.domain_gap.length() * k >= g.codomain().width()) continue;
        auto w = jump_bound_violation(g, record.domain_gap, record.codomain_gaps, k);
        if (w) {
          ++witnesses;
          if (check_interval_criterion(g, k).accepted)
            return "map " + std::to_string(i) + ": witness but criterion accepted";
        }
      }
    }
  }
  if (jump_checks == 0 || witnesses == 0) return "suite failed to exercise the lemmas";
  return std::nullopt;
}

// ---------- criteria 4 and 5 ----------

std::vector<FamilyThread> acceptance_family() {
  return {{GapStream(GammaSequence::half_bound()), Rational(1, 2), "T1"},
          {GapStream(GammaSequence::half_bound()), Rational(1, 3), "T2"},
          {GapStream(GammaSequence::half_bound()), Rational(1, 4), "T3"}};
}

GammaStarRun& shared_run() {
  static GammaStarRun run =
      gamma_star_prefix(acceptance_family(), Rational(2), Rational(1, 4), 5);
  return run;
}

std::optional<std::string> gamma_star_run() {
  const GammaStarRun& run = shared_run();
  if (run.produced.size() != 5) return "run did not complete 5 steps";
  if (run.produced[0] != Rational(1, 64))
    return "gamma*_1 is " + run.produced[0].str() + ", expected 1/64";
  for (std::size_t k = 1; k <= 5; ++k) {
    Rational bound =
        Rational::pow2(-static_cast<int>(k) - 1) * Rational(1, 2) * Rational(1, 4);
    if (run.produced[k - 1] >= bound)
      return "property (1) bound fails at k=" + std::to_string(k);
  }
  if (auto bad = recheck_trace(run)) return "trace recheck: " + *bad;
  return std::nullopt;
}

std::optional<std::string> two_pronged_evidence() {
  const GammaStarRun& run = shared_run();
  const std::vector<Rational>& budgets = run.produced;
  for (const Rational& width : {Rational(1, 2), Rational(1, 3), Rational(1, 4)}) {
    Thread target = build_thread(GammaSequence::half_bound(), 8, width);
    JumpCertificate cert = jump_infeasibility(target, budgets, Rational(2), 5);
    if (cert.feasible)
      return "certificate FEASIBLE against width " + width.str();
    for (const Rational& source_width : {Rational(1, 2), Rational(1, 3), Rational(1, 4)}) {
      Thread source = build_thread(GammaSequence::values(budgets), 5, source_width);
      if (brute_force_map_search(source, target, Rational(2), Rational(1, 128)))
        return "brute force found a map from width " + source_width.str() +
               " against width " + width.str();
    }
  }
  return std::nullopt;
}

// ---------- criteria 6 and 7 ----------

SkeinBuildConfig acceptance_skein_config() {
  SkeinBuildConfig c;
  c.depth = 2;
  c.gammas_per_pair = 2;
  c.grid = Rational(1, 16);
  c.gaps_per_thread = 3;
  c.pair_budget = 4;
  return c;
}

SkeinTruncation& shared_truncation() {
  static SkeinTruncation tr = SkeinTruncation::build(acceptance_skein_config());
  return tr;
}

std::optional<std::string> skein_stability() {
  const SkeinTruncation& tr = shared_truncation();
  const std::size_t n = tr.points().size();
  if (n > 200) return "truncation materialized " + std::to_string(n) + " points (over 200)";
  auto table = shortest_path_table(tr);
  SkeinDistance dist(tr);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (dist(static_cast<int>(i), static_cast<int>(j)) != table[i][j])
        return "oracle mismatch at (" + tr.address(static_cast<int>(i)) + ", " +
               tr.address(static_cast<int>(j)) + ")";
  std::vector<int> ball;
  std::vector<int> low = tr.generation_upto(1);
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<Rational> nearest;
    for (int z : low) {
      Rational d = dist(static_cast<int>(i), z);
      if (!nearest || d < *nearest) nearest = d;
    }
    if (nearest && *nearest < Rational(1, 8)) ball.push_back(static_cast<int>(i));
  }
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < ball.size(); ++i)
    for (std::size_t j = i + 1; j < ball.size(); ++j) pairs.emplace_back(ball[i], ball[j]);
  StabilityVerdict v = stability_report(tr, 1, pairs);
  if (!v.accepted)
    return v.reason + " at (" + tr.address(v.witness->first) + ", " +
           tr.address(v.witness->second) + ")";
  if (v.pairs_checked != pairs.size()) return "stability did not cover every in-ball pair";
  return std::nullopt;
}

std::optional<std::string> chain_and_isolation() {
  const SkeinTruncation& tr = shared_truncation();
  SkeinDistance dist(tr);
  Prng rng(7);
  const std::size_t n = tr.points().size();
  for (int trial = 0; trial < 100; ++trial) {
    int p = static_cast<int>(rng.below(n));
    int q = static_cast<int>(rng.below(n));
    auto c = chain(tr, p, q);
    if (c.front() != p || c.back() != q) return "chain endpoints wrong";
    for (std::size_t s = 1; s < c.size(); ++s)
      if (dist(c[s - 1], c[s]) > Rational(1, 2)) return "chain step exceeds 1/2";
  }

  ObstructionRecipe recipe = isolated_point_obstruction(tr, {0, 1}, 0, Rational(2));
  if (recipe.epsilon != Rational(1, 2) || recipe.gap_budget != Rational(1, 4))
    return "obstruction recipe has wrong numbers";
  if (recipe.chain != std::vector<int>{0, 1}) return "obstruction chain is not [A,B]";

  // Instantiate the recipe: a thread with every gap below the budget, mapped
  // into a codomain split into two sides at exact distance epsilon.
  Thread instantiated = build_thread(GammaSequence::half_bound(), 3, Rational(1, 2));
  for (const auto& g : instantiated.gaps())
    if (g.length() >= recipe.gap_budget) return "instantiated thread violates the budget";
  Thread codomain(Rational(1), Rational(1, 2), {{Rational(1, 32), Rational(31, 32)}});
  const Rational split(31, 32);

  // Prong one: no K-Lipschitz endpoint-fixing candidate crosses the split.
  if (brute_force_map_search(instantiated, codomain, Rational(2), Rational(1, 16)))
    return "a 2-Lipschitz crossing candidate exists";

  // Prong two: every brute-forced crossing candidate triggers the separation
  // witness, which in turn certifies the criterion rejects it.
  std::vector<Rational> xs = instantiated.support_points(Rational(1, 16));
  std::vector<Rational> low_values = {Rational(0), Rational(1, 32)};
  std::vector<Rational> high_values = {Rational(31, 32), Rational(1)};
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t cross = 1 + rng.below(xs.size() - 1);
    std::vector<Rational> vs(xs.size());
    Rational lo(0), hi = Rational(31, 32);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i < cross) {
        if (rng.coin()) lo = max(lo, rng.pick(low_values));
        vs[i] = lo;
      } else {
        if (rng.coin()) hi = min(codomain.length(), max(hi, rng.pick(high_values)));
        vs[i] = hi;
      }
    }
    PLMap candidate(instantiated, codomain, xs, vs);
    auto witness = separation_violation(candidate, split, Rational(1, 2), Rational(2));
    if (!witness) return "crossing candidate produced no separation witness";
    if (witness->value_dist < Rational(1, 2) || witness->domain_dist >= Rational(1, 4))
      return "separation witness numbers are wrong";
    if (check_interval_criterion(candidate, Rational(2)).accepted)
      return "separation witness but the criterion accepted K=2";
  }
  return std::nullopt;
}

// ---------- criterion 8 ----------

std::optional<std::string> determinism_round_trip() {
  VerifyConfig config;
  config.seed = 7;
  std::string first = dump(run_verification(config).to_json());
  std::string second = dump(run_verification(config).to_json());
  if (first != second) return "verify --all --seed 7 reports differ between runs";
  if (first.find("\"failures\": 0") == std::string::npos)
    return "verification suites are not all green";

  Thread ta = fixture_ta();
  if (dump(to_json(thread_from_json(to_json(ta)))) != dump(to_json(ta)))
    return "thread JSON round-trip drifts";
  const GammaStarRun& run = shared_run();
  if (dump(to_json(run_from_json(to_json(run)))) != dump(to_json(run)))
    return "run JSON round-trip drifts";
  JumpCertificate cert = jump_infeasibility(ta, {Rational(1, 64)}, Rational(2), 1);
  if (dump(to_json(certificate_from_json(to_json(cert)))) != dump(to_json(cert)))
    return "certificate JSON round-trip drifts";
  const SkeinTruncation& tr = shared_truncation();
  if (dump(to_json(truncation_from_json(to_json(tr)))) != dump(to_json(tr)))
    return "truncation JSON round-trip drifts";
  return std::nullopt;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "thread metric exactness on fixtures", 5.0, thread_metric_exactness},
      {2, "greedy gap construction to depth 64", 10.0, cantor_construction},
      {3, "Lipschitz lemma suite over 500 seeded maps", 30.0, lipschitz_lemma_suite},
      {4, "gamma* diagonal run (K=2, eps=1/4, k=5)", 60.0, gamma_star_run},
      {5, "two-pronged impossibility evidence", 300.0, two_pronged_evidence},
      {6, "depth-2 skein oracle agreement and stability", 120.0, skein_stability},
      {7, "chains and the isolation obstruction", 60.0, chain_and_isolation},
      {8, "determinism and JSON round-trips", 120.0, determinism_round_trip},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::optional<std::string> witness;
    try {
      witness = c.run();
    } catch (const std::exception& e) {
      witness = std::string("exception: ") + e.what();
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!witness && seconds > c.budget_seconds)
      witness = "runtime " + std::to_string(seconds) + " s exceeds the budget";
    std::printf("%s  criterion %d: %s (%.2f s)\n", witness ? "FAIL" : "PASS", c.number,
                c.title.c_str(), seconds);
    if (witness) {
      std::printf("      %s\n", witness->c_str());
      ++failures;
    }
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures;
}
