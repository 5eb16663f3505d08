#pragma once

#include <optional>
#include <vector>

#include "skein/interval.hpp"
#include "skein/rational.hpp"

namespace skein {

/// Either [p,q]_T (Inner) or the wrap-around complement [0,p]_T ∪ [q,l]_T
/// (Outer) of a thread.
struct ExtendedInterval {
  enum class Kind { Inner, Outer };
  Kind kind = Kind::Inner;
  Rational p;
  Rational q;

  bool contains(const Rational& x) const {
    return kind == Kind::Inner ? (p <= x && x <= q) : (x <= p || q <= x);
  }
};

/// Result of separating a thread into two disjoint closed halves:
/// S1 = [0, low_end]_T and S2 = [high_start, l]_T with (low_end, high_start)
/// missing from the thread.
struct SeparatingSplit {
  Rational low_end;
  Rational high_start;
};

/// A finite-gap truncation of a thread of length l and width a: the point set
/// [0,l] minus finitely many disjoint open gaps, carrying the metric
/// d(x,y) = min(|x-y|, x+(l-y)+a, y+(l-x)+a).
///
/// Storing finitely many gaps means the represented point set is a superset
/// of the limiting construction it truncates; the metric of retained points
/// is unaffected. Immutable after construction.
class Thread {
public:
  Thread(Rational length, Rational width, std::vector<OpenInterval> gaps);

  const Rational& length() const { return length_; }
  const Rational& width() const { return width_; }
  /// Gaps sorted by left endpoint.
  const std::vector<OpenInterval>& gaps() const { return gaps_; }

  /// True iff x lies in [0,l] and not in the interior of any gap.
  bool is_point(const Rational& x) const;
  void require_point(const Rational& x) const;

  Rational distance(const Rational& x, const Rational& y) const;

  /// The thread [x,y]_T re-based to [0, y-x]: gaps strictly inside (x,y)
  /// shifted by -x, width min(y-x, a + x + (l-y)). The inherited metric of
  /// [x,y]_T equals the result's metric under t -> t - x.
  Thread subthread(const Rational& x, const Rational& y) const;

  /// Gaps sorted by decreasing length, ties by ascending left endpoint.
  std::vector<OpenInterval> gaps_by_length() const;

  /// length minus the total gap length.
  Rational measure() const;

  /// Splits the thread at a gap lying between p and q (largest such gap in
  /// gaps_by_length order; the gap may share an endpoint with p or q).
  /// Throws NOT_SEPARABLE_AT_TRUNCATION when no stored gap qualifies.
  SeparatingSplit separating_split(const Rational& p, const Rational& q) const;

  /// 0, l and every gap endpoint, ascending.
  std::vector<Rational> mandatory_points() const;

  /// mandatory_points plus the valid multiples of step in [0,l], ascending.
  std::vector<Rational> support_points(const Rational& step) const;

  friend bool operator==(const Thread& a, const Thread& b) {
    return a.length_ == b.length_ && a.width_ == b.width_ && a.gaps_ == b.gaps_;
  }

private:
  Rational length_;
  Rational width_;
  std::vector<OpenInterval> gaps_;  // sorted by left endpoint
};

}  // namespace skein
