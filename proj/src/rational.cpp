#include "skein/rational.hpp"

#include <ostream>

#include "skein/error.hpp"

namespace skein {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidPoint: return "INVALID_POINT";
    case Errc::Degenerate: return "DEGENERATE";
    case Errc::NotSeparableAtTruncation: return "NOT_SEPARABLE_AT_TRUNCATION";
    case Errc::GammaExhausted: return "GAMMA_EXHAUSTED";
    case Errc::NotEndpointFixing: return "NOT_ENDPOINT_FIXING";
    case Errc::NotMonotone: return "NOT_MONOTONE";
    case Errc::PreconditionGap: return "PRECONDITION_GAP";
    case Errc::PreconditionFailed: return "PRECONDITION_FAILED";
    case Errc::LipIncreased: return "LIP_INCREASED";
    case Errc::NotInN: return "NOT_IN_N";
    case Errc::NoNearbyPoint: return "NO_NEARBY_POINT";
    case Errc::FactorialGuard: return "FACTORIAL_GUARD";
    case Errc::DeepeningExhausted: return "DEEPENING_EXHAUSTED";
    case Errc::MeasureViolation: return "MEASURE_VIOLATION";
    case Errc::SearchGuard: return "SEARCH_GUARD";
    case Errc::GlueNotIsometric: return "GLUE_NOT_ISOMETRIC";
    case Errc::NotMaterialized: return "NOT_MATERIALIZED";
    case Errc::OutsideStabilityBall: return "OUTSIDE_STABILITY_BALL";
    case Errc::Ambiguous: return "AMBIGUOUS";
    case Errc::CriterionMismatch: return "CRITERION_MISMATCH";
    case Errc::NotIsolated: return "NOT_ISOLATED";
    case Errc::InvalidArgument: return "INVALID_ARGUMENT";
    case Errc::ParseError: return "PARSE_ERROR";
  }
  return "UNKNOWN";
}

Rational::Rational(long num, long den) {
  if (den == 0) fail(Errc::InvalidArgument, "zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) fail(Errc::InvalidArgument, "division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::parse(const std::string& text) {
  std::string num = text, den = "1";
  if (auto slash = text.find('/'); slash != std::string::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  if (!is_int(num) || !is_int(den)) fail(Errc::ParseError, "bad rational: '" + text + "'");
  mpz_class n(num), d(den);
  if (d == 0) fail(Errc::ParseError, "zero denominator: '" + text + "'");
  mpq_class v(n, d);
  v.canonicalize();
  return Rational(std::move(v));
}

Rational Rational::pow2(int e) {
  mpq_class v(1);
  if (e >= 0)
    mpq_mul_2exp(v.get_mpq_t(), v.get_mpq_t(), static_cast<unsigned long>(e));
  else
    mpq_div_2exp(v.get_mpq_t(), v.get_mpq_t(), static_cast<unsigned long>(-e));
  return Rational(std::move(v));
}

std::string Rational::str() const { return numerator_str() + "/" + denominator_str(); }

Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace skein
