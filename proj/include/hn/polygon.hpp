#pragma once

#include <vector>

#include "hn/value.hpp"

namespace hn {

struct polygon_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Normalized concave polygon on [0, m] (m <= 1): piecewise linear,
// value 0 at the origin, strictly decreasing segment slopes. The zero
// object has an empty vertex list; otherwise vertices start at (0, 0).
struct PolygonVertex {
  Rat t;
  ExactSlope height;
};
struct Polygon {
  std::vector<PolygonVertex> vertices;
  bool empty() const { return vertices.empty(); }
};

// Finite positive Dirac combination with atoms at strictly decreasing
// locations and total mass <= 1.
struct MeasureAtom {
  ExactSlope location;
  Rat mass;
};
struct DiracMeasure {
  std::vector<MeasureAtom> atoms;
  bool empty() const { return atoms.empty(); }
};

void validate_polygon(const Polygon& p);
void validate_measure(const DiracMeasure& m);

Rat total_mass(const DiracMeasure& m);

// Integral of t against the measure (exact). Empty measure integrates
// to the rational zero.
ExactSlope measure_mean(const DiracMeasure& m);

// Mutually inverse on valid data: polygon slope on the i-th interval is
// the i-th largest atom location, interval length its mass.
Polygon measure_to_polygon(const DiracMeasure& m);
DiracMeasure polygon_to_measure(const Polygon& p);

bool polygon_equal(const Polygon& a, const Polygon& b);
bool measure_equal(const DiracMeasure& a, const DiracMeasure& b);

}  // namespace hn
