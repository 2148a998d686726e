#include "hn/polygon.hpp"

namespace hn {

void validate_polygon(const Polygon& p) {
  if (p.empty()) return;
  if (p.vertices[0].t != 0 || !p.vertices[0].height.is_zero())
    throw polygon_error("polygon must start at (0, 0)");
  if (p.vertices.size() < 2) throw polygon_error("non-empty polygon needs a segment");
  if (p.vertices.back().t > 1) throw polygon_error("polygon domain exceeds [0, 1]");
  ExactSlope prev_slope;
  for (size_t i = 1; i < p.vertices.size(); ++i) {
    const Rat dt = p.vertices[i].t - p.vertices[i - 1].t;
    if (dt <= 0) throw polygon_error("polygon abscissae not strictly increasing");
    const ExactSlope s = (p.vertices[i].height - p.vertices[i - 1].height).scaled(Rat(dt.get_den(), dt.get_num()));
    if (i > 1 && s.compare(prev_slope) >= 0) throw polygon_error("polygon is not strictly concave");
    prev_slope = s;
  }
}

void validate_measure(const DiracMeasure& m) {
  Rat total(0);
  for (size_t i = 0; i < m.atoms.size(); ++i) {
    if (m.atoms[i].mass <= 0) throw polygon_error("measure atom with non-positive mass");
    if (!m.atoms[i].location.is_finite()) throw polygon_error("measure atom at a sentinel location");
    if (i > 0 && m.atoms[i].location.compare(m.atoms[i - 1].location) >= 0)
      throw polygon_error("measure atoms not at strictly decreasing locations");
    total += m.atoms[i].mass;
  }
  if (total > 1) throw polygon_error("measure mass exceeds 1");
}

Rat total_mass(const DiracMeasure& m) {
  Rat total(0);
  for (const auto& a : m.atoms) total += a.mass;
  return total;
}

ExactSlope measure_mean(const DiracMeasure& m) {
  if (m.empty()) return ExactSlope::rational(Rat(0));
  ExactSlope acc = ExactSlope::zero(m.atoms[0].location.scale());
  for (const auto& a : m.atoms) acc = acc + a.location.scaled(a.mass);
  return acc;
}

Polygon measure_to_polygon(const DiracMeasure& m) {
  validate_measure(m);
  Polygon p;
  if (m.empty()) return p;
  const Scale sc = m.atoms[0].location.scale();
  p.vertices.push_back({Rat(0), ExactSlope::zero(sc)});
  Rat t(0);
  ExactSlope h = ExactSlope::zero(sc);
  for (const auto& a : m.atoms) {
    t += a.mass;
    h = h + a.location.scaled(a.mass);
    p.vertices.push_back({t, h});
  }
  validate_polygon(p);
  return p;
}

DiracMeasure polygon_to_measure(const Polygon& p) {
  validate_polygon(p);
  DiracMeasure m;
  for (size_t i = 1; i < p.vertices.size(); ++i) {
    const Rat dt = p.vertices[i].t - p.vertices[i - 1].t;
    const ExactSlope s =
        (p.vertices[i].height - p.vertices[i - 1].height).scaled(Rat(dt.get_den(), dt.get_num()));
    m.atoms.push_back({s, dt});
  }
  return m;
}

bool polygon_equal(const Polygon& a, const Polygon& b) {
  if (a.vertices.size() != b.vertices.size()) return false;
  for (size_t i = 0; i < a.vertices.size(); ++i) {
    if (a.vertices[i].t != b.vertices[i].t) return false;
    if (a.vertices[i].height.compare(b.vertices[i].height) != 0) return false;
  }
  return true;
}

bool measure_equal(const DiracMeasure& a, const DiracMeasure& b) {
  if (a.atoms.size() != b.atoms.size()) return false;
  for (size_t i = 0; i < a.atoms.size(); ++i) {
    if (a.atoms[i].mass != b.atoms[i].mass) return false;
    if (a.atoms[i].location.compare(b.atoms[i].location) != 0) return false;
  }
  return true;
}

}  // namespace hn
