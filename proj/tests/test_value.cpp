#include <random>

#include "doctest.h"
#include "hn/value.hpp"

using namespace hn;

TEST_CASE("rational parsing and rendering") {
  CHECK(rat_from_string("3/4") == Rat(3, 4));
  CHECK(rat_from_string("-6/4") == Rat(-3, 2));
  CHECK(rat_from_string("7") == Rat(7));
  CHECK(rat_to_string(Rat(-3, 2)) == "-3/2");
  CHECK(rat_to_string(Rat(5)) == "5");
  CHECK_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rat_from_string("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(rat_from_string(""), std::invalid_argument);
  CHECK_THROWS_AS(rat_from_string("1/ 2"), std::invalid_argument);
}

TEST_CASE("sqrt_ceil") {
  CHECK(sqrt_ceil(Rat(0)) == 0);
  CHECK(sqrt_ceil(Rat(1)) == 1);
  CHECK(sqrt_ceil(Rat(2)) == 2);
  CHECK(sqrt_ceil(Rat(4)) == 2);
  CHECK(sqrt_ceil(Rat(1, 2)) == 1);
  CHECK(sqrt_ceil(Rat(17, 4)) == 3);
}

TEST_CASE("degree arithmetic in both scales") {
  const auto a = ExactDegree::rational(Rat(3, 2));
  const auto b = ExactDegree::rational(Rat(-1, 3));
  CHECK((a + b).rational_value() == Rat(7, 6));
  CHECK((a - b).rational_value() == Rat(11, 6));
  CHECK(ExactDegree::zero(Scale::rational).is_zero());

  const auto c = ExactDegree::log_rational(Rat(1, 4));  // +log 2
  const auto d = ExactDegree::log_rational(Rat(4));     // -log 2
  CHECK((c + d).is_zero());
  CHECK((c - d).log_argument() == Rat(1, 16));
  // -1/2 log is decreasing: smaller argument means larger degree.
  CHECK(c.compare(d) > 0);
  CHECK_THROWS_AS((void)(a + c), value_error);
  CHECK_THROWS_AS(ExactDegree::log_rational(Rat(-1)), value_error);
}

TEST_CASE("slope comparison is exact in both scales") {
  const auto r1 = ExactSlope::rational(Rat(1, 3));
  const auto r2 = ExactSlope::rational(Rat(2, 7));
  CHECK(r1.compare(r2) > 0);

  // (d=1/4, r=1) vs (d=1, r=2): (1/4)^2 = 1/16 < 1 so the first is larger.
  const auto s1 = ExactSlope::log_scaled(Rat(1, 4), 1);
  const auto s2 = ExactSlope::log_scaled(Rat(1), 2);
  CHECK(s1.compare(s2) > 0);
  CHECK(s2.is_zero());

  // Equal values with different representations.
  const auto t1 = ExactSlope::log_scaled(Rat(4), 1);
  const auto t2 = ExactSlope::log_scaled(Rat(16), 2);
  CHECK(t1.compare(t2) == 0);
}

TEST_CASE("slope arithmetic stays closed and exact") {
  const auto x = ExactSlope::log_scaled(Rat(9), 2);
  const auto y = ExactSlope::log_scaled(Rat(2), 3);
  const auto sum = x + y;
  CHECK(sum.scale() == Scale::log_rational);
  // Scaling roundtrip: (m * x) * (1/m) == x.
  const Rat m(5, 3);
  const auto back = x.scaled(m).scaled(Rat(3, 5));
  CHECK(back.compare(x) == 0);
  CHECK((x - x).is_zero());
  CHECK(x.scaled(Rat(0)).is_zero());
  CHECK_THROWS_AS((void)x.scaled(Rat(-1)), value_error);
}

TEST_CASE("sentinels order around finite slopes and reject arithmetic") {
  const auto lo = ExactSlope::negative_infinity();
  const auto hi = ExactSlope::positive_infinity();
  const auto mid = ExactSlope::rational(Rat(1000000));
  CHECK(lo.compare(mid) < 0);
  CHECK(mid.compare(hi) < 0);
  CHECK(lo.compare(hi) < 0);
  CHECK(lo.compare(ExactSlope::negative_infinity()) == 0);
  CHECK_THROWS_AS((void)(lo + mid), value_error);
  CHECK_THROWS_AS((void)lo.scaled(Rat(2)), value_error);
}

TEST_CASE("exact comparison agrees with floating evaluation") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> num(1, 400), den(1, 400), rank(1, 6);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    Rat d1(num(rng), den(rng)), d2(num(rng), den(rng));
    d1.canonicalize();
    d2.canonicalize();
    const auto a = ExactSlope::log_scaled(d1, rank(rng));
    const auto b = ExactSlope::log_scaled(d2, rank(rng));
    const double fa = a.to_double(), fb = b.to_double();
    if (std::abs(fa - fb) > 1e-9) {
      ++checked;
      CHECK(a.compare(b) == (fa < fb ? -1 : 1));
    }
  }
  CHECK(checked > 9000);  // the generator rarely produces near-ties
}

TEST_CASE("slope order is transitive on random triples") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(1, 50), rank(1, 5);
  for (int i = 0; i < 10000; ++i) {
    Rat d1(num(rng), num(rng)), d2(num(rng), num(rng)), d3(num(rng), num(rng));
    d1.canonicalize();
    d2.canonicalize();
    d3.canonicalize();
    const auto a = ExactSlope::log_scaled(d1, rank(rng));
    const auto b = ExactSlope::log_scaled(d2, rank(rng));
    const auto c = ExactSlope::log_scaled(d3, rank(rng));
    if (a.compare(b) <= 0 && b.compare(c) <= 0) CHECK(a.compare(c) <= 0);
    if (a.compare(b) < 0 && b.compare(c) < 0) CHECK(a.compare(c) < 0);
  }
}
