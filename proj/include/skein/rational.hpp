#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace skein {

/// Exact rational scalar, the universal coordinate type of the library.
///
/// Always stored in lowest terms with a positive denominator; zero is 0/1.
/// Backed by GMP so denominators may grow without overflow. Arithmetic is
/// exact and total except division by zero. Values are immutable in spirit:
/// operations return fresh values and never mutate shared state, so they are
/// safe to share across threads.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}
  Rational(long num, long den);
  explicit Rational(mpq_class v);

  /// Parses "p/q" (or a bare integer "p"); the stored value is reduced.
  static Rational parse(const std::string& text);

  /// 2^e for any integer e (e may be negative).
  static Rational pow2(int e);

  /// Serialized form "p/q" in lowest terms, "0/1" for zero.
  std::string str() const;

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }

  std::string numerator_str() const { return v_.get_num().get_str(); }
  std::string denominator_str() const { return v_.get_den().get_str(); }
  const mpq_class& raw() const { return v_; }

  /// Nearest double; used only for rendering, never for decisions.
  double to_double() const { return v_.get_d(); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

private:
  mpq_class v_;
};

Rational abs(const Rational& a);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace skein
