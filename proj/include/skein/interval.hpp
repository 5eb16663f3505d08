#pragma once

#include "skein/error.hpp"
#include "skein/rational.hpp"

namespace skein {

/// Open interval (left, right); empty iff left >= right.
struct OpenInterval {
  Rational left;
  Rational right;

  bool empty() const { return left >= right; }
  Rational length() const { return empty() ? Rational(0) : right - left; }
  bool contains_point(const Rational& x) const { return left < x && x < right; }

  friend bool operator==(const OpenInterval& a, const OpenInterval& b) {
    return a.left == b.left && a.right == b.right;
  }
};

/// True iff the two open intervals share a point.
inline bool intersects(const OpenInterval& a, const OpenInterval& b) {
  if (a.empty() || b.empty()) return false;
  return max(a.left, b.left) < min(a.right, b.right);
}

/// True iff inner is a subset of outer as point sets; the empty interval is
/// contained in everything.
inline bool contains(const OpenInterval& outer, const OpenInterval& inner) {
  if (inner.empty()) return true;
  if (outer.empty()) return false;
  return outer.left <= inner.left && inner.right <= outer.right;
}

/// Sweeping of a nonempty interval (a,b) by r > 0: the interval (b-r, a+r).
/// Empty whenever r <= (b-a)/2; empty results canonicalize to the midpoint
/// pair.
inline OpenInterval sweeping(const OpenInterval& g, const Rational& r) {
  if (g.empty()) fail(Errc::InvalidArgument, "sweeping of an empty interval");
  if (r.sign() <= 0) fail(Errc::InvalidArgument, "sweeping radius must be positive");
  if (r + r <= g.right - g.left) {
    Rational mid = (g.left + g.right) / Rational(2);
    return {mid, mid};
  }
  return {g.right - r, g.left + r};
}

}  // namespace skein
