#include "skein/cantor.hpp"

#include <numeric>

#include "skein/error.hpp"

namespace skein {

Rational RationalEnumerator::next() {
  for (;;) {
    if (num_ + 1 < den_) {
      ++num_;
    } else {
      ++den_;
      num_ = 1;
    }
    if (std::gcd(num_, den_) == 1) return Rational(mpq_class(num_, den_));
  }
}

Rational rational_at(std::size_t n) {
  if (n < 1) fail(Errc::InvalidArgument, "enumeration index starts at 1");
  RationalEnumerator e;
  Rational q;
  for (std::size_t i = 0; i < n; ++i) q = e.next();
  return q;
}

GammaVerdict validate_gamma(const std::vector<Rational>& g) {
  for (std::size_t i = 1; i <= g.size(); ++i) {
    const Rational& v = g[i - 1];
    if (v.sign() <= 0) return {false, "condition (i): not positive", i};
    if (i > 1 && v >= g[i - 2]) return {false, "not strictly decreasing", i};
    if (v >= Rational::pow2(-static_cast<int>(i) - 1))
      return {false, "condition (ii): not below 2^-(i+1)", i};
  }
  if (!g.empty() && rational_at(1) + g[0] >= Rational(1))
    return {false, "condition (iii): q_1 + gamma_1 not below 1", 1};
  return {true, "", 0};
}

GammaSequence GammaSequence::half_bound(const Rational& scale) {
  if (scale.sign() <= 0 || scale > Rational(1))
    fail(Errc::InvalidArgument, "half-bound scale must be in (0,1]");
  GammaSequence s;
  s.rule_scale_ = scale;
  return s;
}

GammaSequence GammaSequence::values(std::vector<Rational> prefix) {
  GammaVerdict v = validate_gamma(prefix);
  if (!v.accepted)
    fail(Errc::InvalidArgument, "gamma prefix rejected at index " + std::to_string(v.index) +
                                    ": " + v.reason);
  GammaSequence s;
  s.prefix_ = std::move(prefix);
  return s;
}

std::optional<Rational> GammaSequence::at(std::size_t i) const {
  if (i < 1) fail(Errc::InvalidArgument, "gamma index starts at 1");
  if (i <= prefix_.size()) return prefix_[i - 1];
  if (rule_scale_) return *rule_scale_ * Rational::pow2(-static_cast<int>(i) - 2);
  return std::nullopt;
}

GapStream::GapStream(GammaSequence gamma) : gamma_(std::move(gamma)) {}

const Rational& GapStream::rational(std::size_t n) {
  while (rationals_.size() < n) rationals_.push_back(enum_.next());
  return rationals_[n - 1];
}

OpenInterval GapStream::next() {
  std::size_t i = emitted_.size() + 1;
  auto gi = gamma_.at(i);
  if (!gi) fail(Errc::GammaExhausted, "no gamma_" + std::to_string(i) + " available");
  // Greedy rule: minimal n with (q_n, q_n + gamma_i) inside (0,1) minus the
  // emitted gaps. Containment is by point sets, so candidates may share
  // endpoints with emitted gaps.
  for (std::size_t n = 1;; ++n) {
    OpenInterval cand{rational(n), rational(n) + *gi};
    if (cand.right > Rational(1)) continue;
    bool clear = true;
    for (const auto& g : emitted_) {
      if (intersects(cand, g)) {
        clear = false;
        break;
      }
    }
    if (clear) {
      emitted_.push_back(cand);
      return cand;
    }
  }
}

const OpenInterval& GapStream::gap(std::size_t i) {
  if (i < 1) fail(Errc::InvalidArgument, "gap index starts at 1");
  while (emitted_.size() < i) next();
  return emitted_[i - 1];
}

Thread build_thread(const GammaSequence& g, std::size_t k, const Rational& width) {
  if (width.sign() <= 0 || width > Rational(1))
    fail(Errc::InvalidArgument, "width must satisfy 0 < width <= 1");
  GapStream stream(g);
  for (std::size_t i = 0; i < k; ++i) stream.next();
  return Thread(Rational(1), width, stream.emitted());
}

}  // namespace skein
