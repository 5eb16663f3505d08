#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skein/cantor.hpp"
#include "skein/lipmap.hpp"
#include "skein/thread.hpp"

namespace skein {

/// A gap-stream-backed thread of length 1 in the diagonal construction's
/// family; gaps are materialized on demand.
struct FamilyThread {
  GapStream stream;
  Rational width;
  std::string name;
};

/// One selection round inside an ordering: the sweeping taken around the
/// previous selection and the next gap index that escapes the union so far.
struct SweepSelection {
  std::size_t j = 0;         // gamma* index (1-based) supplying the radius
  Rational radius;           // K * gamma*_j
  OpenInterval swept_gap;    // previous selection, the gap being swept
  OpenInterval sweep;        // resulting sweeping (canonical empty when degenerate)
  std::size_t chosen_n = 0;  // minimal n > previous with G_n outside the union
  OpenInterval chosen_gap;
  Rational alpha;            // length of the chosen gap
};

struct OrderingTrace {
  std::vector<std::size_t> sigma;     // ordering of {1..k}
  std::vector<SweepSelection> steps;  // k rounds
  std::size_t n_sigma = 0;
};

/// Production of gamma*_{step} against one family target.
struct StepTrace {
  std::size_t step = 0;          // 1-based
  std::size_t target_index = 0;  // 0-based into the family
  std::vector<OrderingTrace> orderings;  // empty for step 1
  std::size_t n_omega = 0;
  Rational alpha_omega;  // target gap length at n_omega
  Rational bound_term;   // 2^-(step+1) * eps / K
  Rational gamma_star;
};

struct GammaStarRun {
  Rational k;
  Rational eps;
  std::size_t k_max = 0;
  std::vector<Rational> produced;
  std::vector<StepTrace> trace;
  std::vector<std::string> family_names;
  std::vector<Rational> family_widths;
  /// Materialized gap prefixes in emission order (decreasing length); enough
  /// to re-check every trace selection.
  std::vector<std::vector<OpenInterval>> family_gaps;
};

struct GammaStarOptions {
  std::size_t deepening_budget = 64;  // max gaps materialized per family thread
  std::size_t factorial_guard = 7;    // largest admissible k_max
};

/// The diagonal construction: gamma*_1 = (1/2) min(2^-2 eps/K, alpha^1_1/K),
/// and each later step enumerates every ordering of {1..k}, iterates the
/// sweeping-and-select recursion against the next family target (cycling when
/// k_max exceeds the family size), and midpoints the resulting strict bound.
GammaStarRun gamma_star_prefix(std::vector<FamilyThread> family, const Rational& k,
                               const Rational& eps, std::size_t k_max,
                               const GammaStarOptions& options = {});

/// Re-validates a run from its trace alone: radii, sweepings, escape of every
/// selection from the union along its ordering, minimality of the chosen
/// indices, the alpha decrease, and the produced values. Returns the first
/// inconsistency, or nullopt when coherent.
std::optional<std::string> recheck_trace(const GammaStarRun& run);

/// Soundness-only certificate that no monotone K-Lipschitz endpoint-fixing
/// map can exist from any thread with at most |budgets| gaps (the i-th
/// largest of length at most budgets[i-1]) onto the target, judged on the
/// target's first m gaps by decreasing length. An INFEASIBLE verdict at K
/// covers every constant K' with 1 <= K' <= K.
struct JumpCertificate {
  std::vector<OpenInterval> target_gaps;  // the m analyzed gaps, decreasing length
  std::vector<Rational> budgets;
  Rational k;
  std::size_t m = 0;
  bool feasible = false;
  /// When feasible: per analyzed gap (position order), the 1-based budget
  /// slot covering it.
  std::vector<std::size_t> assignment;
  /// Number of partial assignments examined; documents the exhaustion.
  std::uint64_t explored = 0;
};

JumpCertificate jump_infeasibility(const Thread& target, const std::vector<Rational>& budgets,
                                   const Rational& k, std::size_t m);

struct BruteForceOptions {
  std::uint64_t state_guard = 4'000'000;  // support-count x value-count limit
};

/// Exhaustive search for a non-decreasing endpoint-fixing map with
/// lip_const <= K from the source onto the target, over supports restricted
/// to grid multiples plus the mandatory points. Returns the first map in
/// value-ascending enumeration order, or nullopt after exhaustion.
std::optional<PLMap> brute_force_map_search(const Thread& source, const Thread& target,
                                            const Rational& k, const Rational& grid_step,
                                            const BruteForceOptions& options = {});

/// Raises every count guard to at least the value of SKEIN_GUARD_OVERRIDE
/// when that environment variable holds a positive integer.
std::uint64_t guard_override(std::uint64_t default_value);

}  // namespace skein
