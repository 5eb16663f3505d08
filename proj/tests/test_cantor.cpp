#include <doctest.h>

#include "skein/cantor.hpp"
#include "skein/error.hpp"

using namespace skein;

TEST_CASE("the fixed enumeration of the unit rationals") {
  CHECK(rational_at(1) == Rational(1, 2));
  CHECK(rational_at(4) == Rational(1, 4));
  CHECK(rational_at(9) == Rational(4, 5));
  CHECK(rational_at(10) == Rational(1, 6));
  CHECK(rational_at(11) == Rational(5, 6));  // 2/6..4/6 are skipped
  CHECK_THROWS_AS(rational_at(0), Error);
}

TEST_CASE("gamma validation reports the first violated condition") {
  CHECK(validate_gamma({Rational(1, 8), Rational(1, 16), Rational(1, 32)}).accepted);
  auto v = validate_gamma({Rational(1, 4), Rational(1, 16)});
  CHECK_FALSE(v.accepted);
  CHECK(v.index == 1);
  CHECK(v.reason.find("(ii)") != std::string::npos);
  auto w = validate_gamma({Rational(1, 16), Rational(1, 8)});
  CHECK_FALSE(w.accepted);
  CHECK(w.reason.find("decreasing") != std::string::npos);
  CHECK(w.index == 2);
  auto z = validate_gamma({Rational(0, 1)});
  CHECK_FALSE(z.accepted);
  CHECK(z.reason.find("(i)") != std::string::npos);
  CHECK(validate_gamma({}).accepted);
}

TEST_CASE("greedy gaps follow the minimal-index rule") {
  // Oracle for the expected values: re-simulate the rule by hand.
  // i=1: q_1 = 1/2 fits -> (1/2, 5/8).
  // i=2: (1/2, 9/16) meets G_1; q_2 = 1/3 gives (1/3, 19/48), 19/48 < 1/2.
  // i=3: q_1, q_2 candidates land inside G_1, G_2; q_3 = 2/3 is free.
  GapStream s(GammaSequence::half_bound());
  CHECK(s.next() == OpenInterval{Rational(1, 2), Rational(5, 8)});
  CHECK(s.next() == OpenInterval{Rational(1, 3), Rational(1, 3) + Rational(1, 16)});
  CHECK(s.next() == OpenInterval{Rational(2, 3), Rational(2, 3) + Rational(1, 32)});
}

TEST_CASE("streams are resumable and forkable") {
  GapStream s(GammaSequence::half_bound());
  s.next();
  GapStream fork = s;  // value semantics
  OpenInterval a = s.next();
  OpenInterval b = fork.next();
  CHECK(a == b);
  CHECK(s.gap(5) == fork.gap(5));
}

TEST_CASE("finite prefixes exhaust") {
  GapStream s(GammaSequence::values({Rational(1, 8), Rational(1, 16)}));
  s.next();
  s.next();
  CHECK_THROWS_AS(s.next(), Error);
  CHECK_THROWS_AS(build_thread(GammaSequence::values({Rational(1, 8)}), 2, Rational(1, 2)),
                  Error);
}

TEST_CASE("build_thread materializes the requested prefix") {
  Thread t = build_thread(GammaSequence::values({Rational(1, 8), Rational(1, 16),
                                                 Rational(1, 32)}),
                          3, Rational(1, 2));
  CHECK(t.length() == Rational(1));
  CHECK(t.width() == Rational(1, 2));
  CHECK(t.gaps().size() == 3);
  CHECK(t.measure() == Rational(25, 32));
  CHECK(t.measure() >= Rational(1, 2));

  Thread empty = build_thread(GammaSequence::half_bound(), 0, Rational(1));
  CHECK(empty.gaps().empty());
  CHECK_THROWS_AS(build_thread(GammaSequence::half_bound(), 1, Rational(2)), Error);
}

TEST_CASE("emitted gap lengths equal gamma and stay disjoint to depth 24") {
  GapStream s(GammaSequence::half_bound());
  for (std::size_t i = 1; i <= 24; ++i) {
    OpenInterval g = s.next();
    CHECK(g.length() == Rational::pow2(-static_cast<int>(i) - 2));
    CHECK(g.left.sign() > 0);
    CHECK(g.right <= Rational(1));
    for (std::size_t j = 0; j + 1 < i; ++j) CHECK_FALSE(intersects(g, s.emitted()[j]));
  }
}
