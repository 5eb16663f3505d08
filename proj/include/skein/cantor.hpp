#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "skein/interval.hpp"
#include "skein/rational.hpp"
#include "skein/thread.hpp"

namespace skein {

/// The fixed enumeration of Q ∩ (0,1): reduced fractions listed by increasing
/// denominator, then increasing numerator (1/2, 1/3, 2/3, 1/4, 3/4, 1/5, ...).
class RationalEnumerator {
public:
  /// Next element; 1/2 on the first call.
  Rational next();

private:
  unsigned long den_ = 1;
  unsigned long num_ = 0;
};

/// n-th element of the enumeration, n >= 1.
Rational rational_at(std::size_t n);

struct GammaVerdict {
  bool accepted = false;
  std::string reason;      // empty when accepted
  std::size_t index = 0;   // 1-based position of the first violation, 0 when accepted
};

/// Membership test for the sequence class of the greedy construction:
/// strictly decreasing, positive, gamma_i < 2^-(i+1), and q_1 + gamma_1 < 1.
GammaVerdict validate_gamma(const std::vector<Rational>& g);

/// Gap-length source for a gap stream: an explicit finite prefix, or the
/// unbounded preset rule gamma_i = 2^-(i+2) scaled by a positive factor.
class GammaSequence {
public:
  /// gamma_i = scale * 2^-(i+2); scale in (0,1] keeps the sequence admissible.
  static GammaSequence half_bound(const Rational& scale = Rational(1));
  /// Explicit prefix; must pass validate_gamma.
  static GammaSequence values(std::vector<Rational> prefix);

  /// 1-based; nullopt past the end of a finite prefix.
  std::optional<Rational> at(std::size_t i) const;

  bool finite() const { return !rule_scale_.has_value(); }
  std::size_t prefix_size() const { return prefix_.size(); }
  const std::vector<Rational>& prefix() const { return prefix_; }
  const std::optional<Rational>& rule_scale() const { return rule_scale_; }

private:
  std::vector<Rational> prefix_;
  std::optional<Rational> rule_scale_;
};

/// Resumable generator of the greedy gaps G_i = (q_n, q_n + gamma_i) where n
/// is minimal such that the candidate avoids (0,1)'s exterior and every
/// previously emitted gap. A value type: copying forks the stream
/// deterministically, so distinct copies may be advanced independently.
class GapStream {
public:
  explicit GapStream(GammaSequence gamma);

  std::size_t emitted_count() const { return emitted_.size(); }
  /// Emitted gaps in emission order; the i-th has length gamma_i.
  const std::vector<OpenInterval>& emitted() const { return emitted_; }

  /// Emits the next gap; throws GAMMA_EXHAUSTED past a finite prefix.
  OpenInterval next();

  /// 1-based access, advancing the stream as needed.
  const OpenInterval& gap(std::size_t i);

  const GammaSequence& gamma() const { return gamma_; }

private:
  GammaSequence gamma_;
  RationalEnumerator enum_;
  std::vector<Rational> rationals_;  // q_1..q_m cache
  std::vector<OpenInterval> emitted_;

  const Rational& rational(std::size_t n);
};

/// Thread of length 1 and the given width whose gaps are the first k outputs
/// of the gap stream for g.
Thread build_thread(const GammaSequence& g, std::size_t k, const Rational& width);

}  // namespace skein
