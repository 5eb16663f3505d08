#include <doctest.h>

#include "skein/cantor.hpp"
#include "skein/error.hpp"
#include "skein/thread.hpp"
#include "skein/prng.hpp"
#include "skein/verify.hpp"

using namespace skein;

TEST_CASE("fixture T_A has the expected gaps") {
  Thread t = fixture_ta();
  REQUIRE(t.gaps().size() == 3);
  CHECK(t.gaps()[0] == OpenInterval{Rational(1, 3), Rational(19, 48)});
  CHECK(t.gaps()[1] == OpenInterval{Rational(1, 2), Rational(5, 8)});
  CHECK(t.gaps()[2] == OpenInterval{Rational(2, 3), Rational(2, 3) + Rational(1, 32)});
}

TEST_CASE("thread construction validates gaps") {
  CHECK_THROWS_AS(Thread(Rational(1), Rational(1, 2),
                         {{Rational(0), Rational(1, 4)}}),
                  Error);  // touches 0
  CHECK_THROWS_AS(Thread(Rational(1), Rational(1, 2),
                         {{Rational(3, 4), Rational(1)}}),
                  Error);  // touches length
  CHECK_THROWS_AS(Thread(Rational(1), Rational(1, 2),
                         {{Rational(1, 4), Rational(1, 2)}, {Rational(1, 3), Rational(2, 3)}}),
                  Error);  // overlap
  CHECK_THROWS_AS(Thread(Rational(1), Rational(2), {}), Error);  // width > length
  // touching gaps are fine; the shared endpoint stays a point
  Thread t(Rational(1), Rational(1), {{Rational(1, 4), Rational(1, 2)},
                                      {Rational(1, 2), Rational(3, 4)}});
  CHECK(t.is_point(Rational(1, 2)));
  CHECK_FALSE(t.is_point(Rational(3, 8)));
}

TEST_CASE("distance evaluates the three-term minimum") {
  Thread t = fixture_half();  // l=1, a=1/2
  CHECK(t.distance(Rational(0), Rational(1)) == Rational(1, 2));
  CHECK(t.distance(Rational(1, 10), Rational(9, 10)) == Rational(7, 10));
  CHECK(t.distance(Rational(1, 4), Rational(3, 4)) == Rational(1, 2));
  CHECK(t.distance(Rational(3, 4), Rational(1, 4)) == Rational(1, 2));
  CHECK(t.distance(Rational(1, 2), Rational(1, 2)) == Rational(0));
  CHECK_THROWS_AS(fixture_ta().distance(Rational(9, 16), Rational(0)), Error);
}

TEST_CASE("subthread drops boundary gaps and re-bases") {
  Thread line = fixture_half();
  Thread sub = line.subthread(Rational(1, 4), Rational(3, 4));
  CHECK(sub.length() == Rational(1, 2));
  CHECK(sub.width() == Rational(1, 2));  // wrap cost 1/2+1/4+1/4 clips at length
  CHECK(sub.gaps().empty());

  Thread ta = fixture_ta();
  Thread same = ta.subthread(Rational(0), Rational(1));
  CHECK(same == ta);

  Thread mid = ta.subthread(Rational(1, 3), Rational(2, 3));
  CHECK(mid.length() == Rational(1, 3));
  CHECK(mid.width() == Rational(1, 3));
  REQUIRE(mid.gaps().size() == 1);  // only (1/2,5/8) survives, shifted by 1/3
  CHECK(mid.gaps()[0] == OpenInterval{Rational(1, 6), Rational(7, 24)});

  CHECK_THROWS_AS(ta.subthread(Rational(1, 2), Rational(1, 2)), Error);
  CHECK_THROWS_AS(ta.subthread(Rational(2, 3), Rational(1, 3)), Error);
}

TEST_CASE("gaps_by_length sorts by length then left endpoint") {
  Thread ta = fixture_ta();
  auto sorted = ta.gaps_by_length();
  CHECK(sorted[0] == OpenInterval{Rational(1, 2), Rational(5, 8)});
  CHECK(sorted[1] == OpenInterval{Rational(1, 3), Rational(19, 48)});
  CHECK(sorted[2] == OpenInterval{Rational(2, 3), Rational(2, 3) + Rational(1, 32)});

  Thread ties(Rational(1), Rational(1), {{Rational(1, 8), Rational(1, 4)},
                                         {Rational(1, 2), Rational(5, 8)}});
  auto ts = ties.gaps_by_length();
  CHECK(ts[0] == OpenInterval{Rational(1, 8), Rational(1, 4)});
  CHECK(ts[1] == OpenInterval{Rational(1, 2), Rational(5, 8)});

  CHECK(fixture_line().gaps_by_length().empty());
}

TEST_CASE("measure subtracts gap lengths") {
  CHECK(fixture_ta().measure() == Rational(25, 32));
  CHECK(fixture_line().measure() == Rational(1));
}

TEST_CASE("separating split picks the largest interposed gap") {
  Thread ta = fixture_ta();
  SeparatingSplit s = ta.separating_split(Rational(0), Rational(1));
  CHECK(s.low_end == Rational(1, 2));
  CHECK(s.high_start == Rational(5, 8));

  Thread one(Rational(1), Rational(1), {{Rational(1, 4), Rational(1, 2)}});
  SeparatingSplit adj = one.separating_split(Rational(1, 4), Rational(1, 2));
  CHECK(adj.low_end == Rational(1, 4));
  CHECK(adj.high_start == Rational(1, 2));

  CHECK_THROWS_AS(fixture_line().separating_split(Rational(0), Rational(1)), Error);
}

TEST_CASE("extended interval membership") {
  ExtendedInterval inner{ExtendedInterval::Kind::Inner, Rational(1, 4), Rational(1, 2)};
  CHECK(inner.contains(Rational(1, 3)));
  CHECK_FALSE(inner.contains(Rational(3, 4)));
  ExtendedInterval outer{ExtendedInterval::Kind::Outer, Rational(1, 4), Rational(3, 4)};
  CHECK(outer.contains(Rational(0)));
  CHECK(outer.contains(Rational(7, 8)));
  CHECK_FALSE(outer.contains(Rational(1, 2)));
}

TEST_CASE("subthread metric equality on random windows") {
  Prng rng(17);
  Thread deep = build_thread(GammaSequence::half_bound(), 6, Rational(1, 3));
  std::vector<Rational> pts = deep.support_points(Rational(1, 16));
  for (int trial = 0; trial < 30; ++trial) {
    const Rational& x = rng.pick(pts);
    const Rational& y = rng.pick(pts);
    if (x >= y) continue;
    Thread sub = deep.subthread(x, y);
    for (const Rational& u : pts) {
      if (u < x || u > y || !sub.is_point(u - x)) continue;
      for (const Rational& v : pts) {
        if (v < x || v > y || !sub.is_point(v - x)) continue;
        CHECK(sub.distance(u - x, v - x) == deep.distance(u, v));
      }
    }
  }
}
