#include <random>

#include "doctest.h"
#include "hn/polygon.hpp"

using namespace hn;

TEST_CASE("single atom gives a single segment") {
  DiracMeasure m;
  m.atoms.push_back({ExactSlope::rational(Rat(7, 3)), Rat(1)});
  const auto p = measure_to_polygon(m);
  REQUIRE(p.vertices.size() == 2);
  CHECK(p.vertices[0].t == Rat(0));
  CHECK(p.vertices[0].height.is_zero());
  CHECK(p.vertices[1].t == Rat(1));
  CHECK(p.vertices[1].height.rational_value() == Rat(7, 3));
  CHECK(measure_equal(polygon_to_measure(p), m));
}

TEST_CASE("two atoms reproduce the worked polygon") {
  DiracMeasure m;
  m.atoms.push_back({ExactSlope::rational(Rat(1)), Rat(1, 2)});
  m.atoms.push_back({ExactSlope::rational(Rat(0)), Rat(1, 2)});
  const auto p = measure_to_polygon(m);
  REQUIRE(p.vertices.size() == 3);
  CHECK(p.vertices[1].t == Rat(1, 2));
  CHECK(p.vertices[1].height.rational_value() == Rat(1, 2));
  CHECK(p.vertices[2].t == Rat(1));
  CHECK(p.vertices[2].height.rational_value() == Rat(1, 2));
}

TEST_CASE("validation rejects malformed data") {
  DiracMeasure neg;
  neg.atoms.push_back({ExactSlope::rational(Rat(1)), Rat(-1, 2)});
  CHECK_THROWS_AS(validate_measure(neg), polygon_error);

  DiracMeasure increasing;
  increasing.atoms.push_back({ExactSlope::rational(Rat(0)), Rat(1, 2)});
  increasing.atoms.push_back({ExactSlope::rational(Rat(1)), Rat(1, 2)});
  CHECK_THROWS_AS(validate_measure(increasing), polygon_error);

  DiracMeasure heavy;
  heavy.atoms.push_back({ExactSlope::rational(Rat(1)), Rat(2)});
  CHECK_THROWS_AS(validate_measure(heavy), polygon_error);

  Polygon convex;
  convex.vertices.push_back({Rat(0), ExactSlope::rational(Rat(0))});
  convex.vertices.push_back({Rat(1, 2), ExactSlope::rational(Rat(0))});
  convex.vertices.push_back({Rat(1), ExactSlope::rational(Rat(1))});
  CHECK_THROWS_AS(validate_polygon(convex), polygon_error);

  Polygon offset;
  offset.vertices.push_back({Rat(0), ExactSlope::rational(Rat(1))});
  offset.vertices.push_back({Rat(1), ExactSlope::rational(Rat(2))});
  CHECK_THROWS_AS(validate_polygon(offset), polygon_error);
}

TEST_CASE("roundtrip is the identity on random atom data") {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> coin(0, 1), num(1, 12), den(1, 6), count(1, 5);
  for (int t = 0; t < 500; ++t) {
    const bool log_scale = coin(rng) == 1;
    const int n = count(rng);
    // Strictly decreasing locations.
    std::vector<ExactSlope> locs;
    Rat cur(num(rng), den(rng));
    cur.canonicalize();
    for (int i = 0; i < n; ++i) {
      if (log_scale)
        locs.push_back(ExactSlope::log_scaled(Rat(num(rng), 1) + Rat(i), 1 + i % 3));
      else
        locs.push_back(ExactSlope::rational(cur));
      cur -= Rat(num(rng), den(rng));
    }
    if (log_scale) {
      std::sort(locs.begin(), locs.end(), [](const ExactSlope& a, const ExactSlope& b) {
        return a.compare(b) > 0;
      });
      locs.erase(std::unique(locs.begin(), locs.end(),
                             [](const ExactSlope& a, const ExactSlope& b) {
                               return a.compare(b) == 0;
                             }),
                 locs.end());
    }
    // Positive masses with total <= 1.
    DiracMeasure m;
    Rat left(1);
    for (size_t i = 0; i < locs.size(); ++i) {
      Rat mass(1, 2 * int(locs.size()) + den(rng));
      mass.canonicalize();
      if (mass > left) break;
      left -= mass;
      m.atoms.push_back({locs[i], mass});
    }
    if (m.empty()) continue;
    const auto p = measure_to_polygon(m);
    validate_polygon(p);
    CHECK(measure_equal(polygon_to_measure(p), m));
    CHECK(total_mass(m) <= 1);
  }
}
