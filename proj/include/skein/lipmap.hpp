#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "skein/thread.hpp"

namespace skein {

/// A map between threads given by its values on a finite support.
///
/// The support always contains 0, the domain length and every domain gap
/// endpoint; the map is defined only on its support, i.e. the domain is read
/// as the finite thread made of the support points. The gaps of that finite
/// thread are the intervals between consecutive support points, which is the
/// reading the regularization and clipping lemmas need to hold exactly.
class PLMap {
public:
  PLMap(Thread domain, Thread codomain, std::vector<Rational> support,
        std::vector<Rational> values);

  const Thread& domain() const { return domain_; }
  const Thread& codomain() const { return codomain_; }
  const std::vector<Rational>& support() const { return support_; }
  const std::vector<Rational>& values() const { return values_; }
  std::size_t size() const { return support_.size(); }

  /// Value at a support point; throws INVALID_POINT for non-support x.
  const Rational& value_at(const Rational& x) const;
  /// Index of a support point, if present.
  std::optional<std::size_t> support_index(const Rational& x) const;

  bool non_decreasing() const;
  /// F(0) = 0 and F(l_domain) = l_codomain.
  bool endpoint_fixing() const;

  /// Largest distance between consecutive support points.
  Rational max_spacing() const;

  PLMap with_values(std::vector<Rational> values) const;

  friend bool operator==(const PLMap& a, const PLMap& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.support_ == b.support_ &&
           a.values_ == b.values_;
  }

private:
  Thread domain_;
  Thread codomain_;
  std::vector<Rational> support_;  // ascending
  std::vector<Rational> values_;
};

/// Exact Lipschitz constant over all support pairs; 0 for constant maps.
Rational lip_const(const PLMap& f);

struct CriterionVerdict {
  bool accepted = false;
  /// First violating support pair when rejected (scan order: endpoint
  /// condition first, then pairs (i,j) with i < j lexicographically).
  std::optional<std::pair<Rational, Rational>> witness;
};

/// Interval criterion for K-Lipschitzness: d(F(0),F(l)) <= K*a_domain and
/// d(F(x),F(y)) <= K*|y-x| for all support pairs. Equivalent to
/// lip_const(f) <= K on the finite thread.
CriterionVerdict check_interval_criterion(const PLMap& f, const Rational& k);

/// Monotone regularization of an endpoint-fixing map. If some spacing
/// between consecutive support points reaches a_codomain / lip_const(f), the
/// two-step map across the largest such spacing is returned; otherwise the
/// running maximum. Never increases the Lipschitz constant.
PLMap monotone_regularize(const PLMap& f);

/// Pointwise clamp of the values into [A,B]_codomain, re-based onto
/// subthread(codomain, A, B). Requires F(0) = A, F(l) = B and every support
/// spacing below a_codomain / lip_const(f); throws PRECONDITION_GAP otherwise.
PLMap clip(const PLMap& f, const Rational& a, const Rational& b);

/// True iff the domain gap ct jumps over the codomain gap cs under the
/// non-decreasing map f: F(left ct) <= left cs and F(right ct) >= right cs.
/// ct must join two consecutive support points.
bool jumps_over(const PLMap& f, const OpenInterval& ct, const OpenInterval& cs);

/// The domain gap constructed from the extremal attained values around cs;
/// it always jumps over cs. Requires f non-decreasing and endpoint-fixing.
OpenInterval find_jumping_gap(const PLMap& f, const OpenInterval& cs);

/// One domain gap together with codomain gaps it jumps over.
struct JumpRecord {
  OpenInterval domain_gap;
  std::vector<OpenInterval> codomain_gaps;
};

/// For every codomain gap, the jumping domain gap via find_jumping_gap,
/// grouped by domain gap.
std::vector<JumpRecord> jump_records(const PLMap& f);

/// max over ordered pairs (j != j') of |right_j - left_j'|; the length of the
/// single gap for a singleton set.
Rational jump_span(const std::vector<OpenInterval>& gaps);

struct JumpBoundWitness {
  OpenInterval source_gap;
  OpenInterval span_from;  // gap supplying the right endpoint of the span
  OpenInterval span_to;    // gap supplying the left endpoint (equal for singletons)
  Rational span;
  Rational bound;  // K * length(source_gap), strictly below span
};

/// Checks the jump-span bound K*length(ct) >= span(jumped); a returned
/// witness certifies that f cannot be K-Lipschitz. Preconditions: f
/// non-decreasing and endpoint-fixing, length(ct) < a_codomain/K, and every
/// gap of jumped actually jumped by ct.
std::optional<JumpBoundWitness> jump_bound_violation(const PLMap& f, const OpenInterval& ct,
                                                     const std::vector<OpenInterval>& jumped,
                                                     const Rational& k);

struct SeparationWitness {
  Rational x;             // predecessor support point
  Rational p;             // first support point sent into S2
  Rational domain_dist;   // d(x,p) < eps/K
  Rational value_dist;    // d(F(x),F(p)) >= eps
};

/// Detects a crossing of the codomain split {v < split_point} | {v >=
/// split_point} whose existence certifies lip_const(f) > K. Preconditions:
/// every support spacing below eps/K, F(0) on the low side, and eps a valid
/// lower bound for the distance between the two sides.
std::optional<SeparationWitness> separation_violation(const PLMap& f, const Rational& split_point,
                                                      const Rational& eps, const Rational& k);

/// Largest extended interval around t whose support values satisfy in_n;
/// Outer is returned when the blocks at both thread ends qualify.
ExtendedInterval maximal_interval(const PLMap& f,
                                  const std::function<bool(const Rational&)>& in_n,
                                  const Rational& t);

/// Rewrites f to the constant s on I, leaving it unchanged elsewhere, then
/// re-evaluates exactly; throws LIP_INCREASED if the constant grew (a
/// violated boundness precondition).
PLMap collapse_maximal(const PLMap& f, const ExtendedInterval& i, const Rational& s);

struct ExtremeReplacement {
  Rational p;
  Rational q;
  PLMap map;  // on subthread(domain, p, q), extremes sent into d1/d2
};

/// Restricts f to [P,Q]_domain between the outermost domain gaps and replaces
/// the extreme values by members of d1/d2 within the tolerance
/// eps*delta/2, where delta is the exact separation of the cut-off piece.
/// The result's Lipschitz constant is at most lip_const(f) + eps.
ExtremeReplacement replace_extremes(const PLMap& f, const std::vector<Rational>& d1,
                                    const std::vector<Rational>& d2, const Rational& eps);

}  // namespace skein
