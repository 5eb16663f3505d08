#include "skein/thread.hpp"

#include <algorithm>

#include "skein/error.hpp"

namespace skein {

Thread::Thread(Rational length, Rational width, std::vector<OpenInterval> gaps)
    : length_(std::move(length)), width_(std::move(width)), gaps_(std::move(gaps)) {
  if (length_.sign() <= 0) fail(Errc::InvalidArgument, "thread length must be positive");
  if (width_.sign() <= 0 || width_ > length_)
    fail(Errc::InvalidArgument, "thread width must satisfy 0 < width <= length");
  std::sort(gaps_.begin(), gaps_.end(), [](const OpenInterval& a, const OpenInterval& b) {
    return a.left < b.left || (a.left == b.left && a.right < b.right);
  });
  for (std::size_t i = 0; i < gaps_.size(); ++i) {
    const auto& g = gaps_[i];
    if (!(Rational(0) < g.left && g.left < g.right && g.right < length_))
      fail(Errc::InvalidArgument, "gap (" + g.left.str() + "," + g.right.str() +
                                      ") must satisfy 0 < left < right < length");
    if (i > 0 && gaps_[i - 1].right > g.left)
      fail(Errc::InvalidArgument, "gaps overlap at (" + g.left.str() + "," + g.right.str() + ")");
  }
}

bool Thread::is_point(const Rational& x) const {
  if (x < Rational(0) || x > length_) return false;
  // Gaps are sorted by left endpoint; find the first gap with left >= x.
  auto it = std::upper_bound(gaps_.begin(), gaps_.end(), x,
                             [](const Rational& v, const OpenInterval& g) { return v < g.left; });
  if (it == gaps_.begin()) return true;
  return !std::prev(it)->contains_point(x);
}

void Thread::require_point(const Rational& x) const {
  if (!is_point(x)) fail(Errc::InvalidPoint, x.str() + " is not a point of the thread");
}

Rational Thread::distance(const Rational& x, const Rational& y) const {
  require_point(x);
  require_point(y);
  Rational straight = abs(x - y);
  Rational around1 = x + (length_ - y) + width_;
  Rational around2 = y + (length_ - x) + width_;
  return min(straight, min(around1, around2));
}

Thread Thread::subthread(const Rational& x, const Rational& y) const {
  require_point(x);
  require_point(y);
  if (x >= y) fail(Errc::Degenerate, "subthread needs x < y");
  std::vector<OpenInterval> kept;
  for (const auto& g : gaps_)
    if (x < g.left && g.right < y) kept.push_back({g.left - x, g.right - x});
  Rational len = y - x;
  Rational wrap = width_ + x + (length_ - y);
  return Thread(len, min(len, wrap), std::move(kept));
}

std::vector<OpenInterval> Thread::gaps_by_length() const {
  std::vector<OpenInterval> out = gaps_;
  std::stable_sort(out.begin(), out.end(), [](const OpenInterval& a, const OpenInterval& b) {
    Rational la = a.length(), lb = b.length();
    return lb < la || (la == lb && a.left < b.left);
  });
  return out;
}

Rational Thread::measure() const {
  Rational m = length_;
  for (const auto& g : gaps_) m -= g.length();
  return m;
}

SeparatingSplit Thread::separating_split(const Rational& p, const Rational& q) const {
  require_point(p);
  require_point(q);
  if (p == q) fail(Errc::InvalidArgument, "split points must differ");
  Rational lo = min(p, q), hi = max(p, q);
  for (const auto& g : gaps_by_length())
    if (lo <= g.left && g.right <= hi) return {g.left, g.right};
  fail(Errc::NotSeparableAtTruncation, "no gap of the truncation lies between " + lo.str() +
                                           " and " + hi.str());
}

std::vector<Rational> Thread::mandatory_points() const {
  std::vector<Rational> pts;
  pts.push_back(Rational(0));
  for (const auto& g : gaps_) {
    pts.push_back(g.left);
    pts.push_back(g.right);
  }
  pts.push_back(length_);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::vector<Rational> Thread::support_points(const Rational& step) const {
  if (step.sign() <= 0) fail(Errc::InvalidArgument, "grid step must be positive");
  std::vector<Rational> pts = mandatory_points();
  for (Rational t = step; t < length_; t += step)
    if (is_point(t)) pts.push_back(t);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace skein
