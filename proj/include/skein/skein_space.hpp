#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "skein/cantor.hpp"
#include "skein/rational.hpp"
#include "skein/thread.hpp"

namespace skein {

/// A bundle of threads of length 1 and common width a glued at two anchors:
/// every thread's extremes 0 and 1 are identified with A and B, and distinct
/// threads meet exactly in the anchors.
class ThreadingSpace {
public:
  ThreadingSpace(Rational width, std::vector<std::pair<std::string, Thread>> threads);

  const Rational& width() const { return width_; }
  const std::vector<std::pair<std::string, Thread>>& threads() const { return threads_; }

private:
  Rational width_;
  std::vector<std::pair<std::string, Thread>> threads_;
};

/// Point of a threading space: an anchor, or a coordinate strictly inside one
/// thread. Thread coordinates 0 and 1 canonicalize to the anchors.
struct ThreadingPoint {
  int thread = -1;  // -1 for anchors
  Rational coordinate;

  static ThreadingPoint anchor_a() { return {-1, Rational(0)}; }
  static ThreadingPoint anchor_b() { return {-1, Rational(1)}; }
  static ThreadingPoint on_thread(int t, Rational c) { return {t, std::move(c)}; }
};

/// Same-thread pairs use the thread metric; cross-thread pairs route through
/// the nearer anchor: min(d(p,A)+d(A,q), d(p,B)+d(B,q)).
Rational threading_distance(const ThreadingSpace& ts, ThreadingPoint p, ThreadingPoint q);

struct SkeinBuildConfig {
  std::size_t depth = 1;
  std::size_t gammas_per_pair = 2;
  Rational grid = Rational(1, 16);     // dyadic sampling step per thread
  std::size_t gaps_per_thread = 3;
  std::optional<std::size_t> pair_budget;  // expansions per depth step; all when unset
  std::uint64_t point_guard = 5000;
};

/// A finite truncation of the iterated threading-space construction.
///
/// The registry holds every materialized point: the two base points A and B
/// at distance 1/2, plus sampled interior points of the attached threads.
/// Each depth step expands the eligible pairs (one endpoint newly introduced,
/// distance in (0, 1/2]) with a configurable family of gamma prefixes and a
/// dyadic coordinate sample. Immutable once built.
class SkeinTruncation {
public:
  struct Point {
    int parent1 = -1;  // registry index; -1 for base points
    int parent2 = -1;
    int thread = -1;   // owning thread instance; -1 for base points
    Rational coordinate;  // in (0,1) for inner points
    int order = 0;
    char base = 0;  // 'A' or 'B' for base points
  };

  struct ThreadInstance {
    int anchor1 = -1;  // coordinate-0 anchor (registry index)
    int anchor2 = -1;  // coordinate-1 anchor
    std::string gamma_id;
    Thread thread;             // length 1, width = distance of the anchors
    std::vector<int> points;   // interior samples, ascending coordinate
  };

  static SkeinTruncation build(const SkeinBuildConfig& config);

  /// Reassembles a truncation from serialized parts; used by the JSON layer.
  static SkeinTruncation from_parts(SkeinBuildConfig config,
                                    std::vector<std::pair<std::string, GammaSequence>> gammas,
                                    const std::vector<std::string>& addresses,
                                    const std::vector<std::tuple<std::string, std::string,
                                                                 std::string, Rational>>& threads);

  std::size_t depth() const { return config_.depth; }
  const SkeinBuildConfig& config() const { return config_; }
  const std::vector<std::pair<std::string, GammaSequence>>& gammas() const { return gammas_; }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<ThreadInstance>& threads() const { return threads_; }

  int order_of(int p) const;
  /// Canonical address: A, B, or (<addr>,<addr>)#<gamma-id>@p/q.
  std::string address(int p) const;
  /// Registry index for an address; throws NOT_MATERIALIZED.
  int resolve(const std::string& addr) const;

  /// Points with order <= beta.
  std::vector<int> generation_upto(int beta) const;

  /// Structural registry sanity: every inner point lies in the interior of
  /// exactly one materialized thread. Returns a description of the first
  /// violation, if any.
  std::optional<std::string> registry_check() const;

private:
  SkeinBuildConfig config_;
  std::vector<std::pair<std::string, GammaSequence>> gammas_;
  std::vector<Point> points_;
  std::vector<ThreadInstance> threads_;

  int add_base(char label);
  int add_inner(int instance, const Rational& coordinate);
  friend class SkeinDistance;
};

/// Session-local memoized exact distance oracle over a truncation: recursive
/// descent to parents, minimized over the anchor routes.
class SkeinDistance {
public:
  explicit SkeinDistance(const SkeinTruncation& tr) : tr_(tr) {}
  Rational operator()(int p, int q);

private:
  const SkeinTruncation& tr_;
  std::map<std::pair<int, int>, Rational> memo_;
};

/// Exact all-pairs distances via shortest paths over the anchor graph (each
/// thread contributes its complete weighted subgraph). The independent oracle
/// for SkeinDistance.
std::vector<std::vector<Rational>> shortest_path_table(const SkeinTruncation& tr);

/// Closed-form boundness test (nearer anchor within (1-a)/2), cross-checked
/// extensionally against every materialized point outside the thread whose
/// ancestry avoids the thread's interior. Throws CRITERION_MISMATCH when the
/// two disagree.
bool is_bound(const SkeinTruncation& tr, int p, int anchor);

/// Nearest materialized point of order <= beta, computed by parent descent;
/// requires d(p, Sk(beta)) < 1/8. Identity on points of order <= beta.
int ancestor(const SkeinTruncation& tr, int p, int beta);

/// The other anchor of the thread containing p.
int pseudo_ancestor(const SkeinTruncation& tr, int p);

struct StabilityVerdict {
  bool accepted = true;
  std::size_t pairs_checked = 0;
  std::optional<std::pair<int, int>> witness;
  std::string reason;
};

/// For every pair: ancestors exist and are 1-Lipschitz; pairs with distinct
/// ancestors decompose exactly as d(p,q) = d(p,P)+d(P,Q)+d(Q,q).
StabilityVerdict stability_report(const SkeinTruncation& tr, int beta,
                                  const std::vector<std::pair<int, int>>& sample);

/// Finite chain from p to q with consecutive distances <= 1/2, built by
/// descending each endpoint to its nearer parent and recursing.
std::vector<int> chain(const SkeinTruncation& tr, int p, int q);

/// Smallest superset of the sample closed under taking ancestors of every
/// order whose skein lies within 1/8.
std::vector<int> ancestor_closure(const SkeinTruncation& tr, const std::vector<int>& sample);

struct ObstructionRecipe {
  int isolated = -1;
  int partner = -1;         // nearest other member of S
  Rational epsilon;         // d(isolated, S minus isolated)
  Rational gap_budget;      // epsilon / K
  std::vector<int> chain;   // from isolated to partner, steps <= 1/2
};

/// Obstruction data against a K-Lipschitz retraction onto S when p is
/// isolated in S: the connecting chain and the gap budget any thread
/// instantiated along it must respect.
ObstructionRecipe isolated_point_obstruction(const SkeinTruncation& tr,
                                             const std::vector<int>& s, int p,
                                             const Rational& k);

}  // namespace skein
