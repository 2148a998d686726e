#pragma once

#include <utility>
#include <vector>

#include "hn/errors.hpp"
#include "hn/filtration.hpp"
#include "hn/polygon.hpp"

namespace hn {

// Operations a host category must provide to drive the engine: ranks,
// exact degrees of induced structures, the destabilizer oracle, quotient
// structures with projections, preimages along accumulated projections
// and rebased induced structures.
template <typename H>
concept HnHost = requires(const H& h, const typename H::Obj& x, const typename H::Sub& s,
                          const typename H::Morph& m) {
  { h.rank(x) } -> std::convertible_to<int>;
  { h.is_zero_obj(x) } -> std::convertible_to<bool>;
  { h.scale() } -> std::same_as<Scale>;
  { h.degree_sub(x, s) } -> std::same_as<ExactDegree>;
  { h.sub_rank(x, s) } -> std::convertible_to<int>;
  { h.sub_equal(x, s, s) } -> std::convertible_to<bool>;
  { h.zero_sub(x) } -> std::same_as<typename H::Sub>;
  { h.full_sub(x) } -> std::same_as<typename H::Sub>;
  { h.destabilizer(x) } -> std::same_as<typename H::Sub>;
  { h.identity_morph(x) } -> std::same_as<typename H::Morph>;
  { h.compose(m, m) } -> std::same_as<typename H::Morph>;
  { h.preimage(x, m, s) } -> std::same_as<typename H::Sub>;
  { h.sub_object(x, s) } -> std::same_as<typename H::Obj>;
  { h.restrict_sub(x, s, s) } -> std::same_as<typename H::Sub>;
};

struct engine_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename H>
struct HnDecomposition {
  Scale scale = Scale::rational;
  int total_rank = 0;
  std::vector<typename H::Sub> chain;    // zero == chain[0] < ... < chain[n] == full
  std::vector<ExactSlope> slopes;        // strictly decreasing subquotient slopes
  std::vector<ExactDegree> degrees;      // degrees of the chain members
  std::vector<int> ranks;                // ranks of the chain members

  bool is_zero() const { return total_rank == 0; }
  size_t length() const { return slopes.size(); }
};

template <HnHost H>
ExactSlope slope(const H& h, const typename H::Obj& x) {
  const int r = h.rank(x);
  if (r == 0) throw value_error("slope of the zero object");
  return ExactSlope::from_degree(h.degree_sub(x, h.full_sub(x)), Int(r));
}

// The sequence construction: destabilize the running quotient, lift the
// destabilizer through the accumulated projection, recurse on the new
// quotient with its quotient structure.
template <HnHost H>
HnDecomposition<H> hn_sequence(const H& h, const typename H::Obj& x) {
  using Sub = typename H::Sub;
  HnDecomposition<H> d;
  d.scale = h.scale();
  d.total_rank = h.rank(x);
  d.chain.push_back(h.zero_sub(x));
  d.ranks.push_back(0);
  d.degrees.push_back(ExactDegree::zero(d.scale));
  if (h.is_zero_obj(x)) return d;

  typename H::Obj q = x;
  typename H::Morph proj = h.identity_morph(x);
  while (true) {
    Sub des;
    try {
      des = h.destabilizer(q);
    } catch (const hn_sequence_error<Sub>&) {
      throw;
    } catch (const oracle_error& e) {
      throw hn_sequence_error<Sub>(std::string("destabilizer failed: ") + e.what(), d.chain);
    }
    // Subquotient slope straight from the quotient-side structure; the
    // telescoping identity against induced degrees is a test invariant,
    // not an input.
    const int des_rank = h.sub_rank(q, des);
    d.slopes.push_back(ExactSlope::from_degree(h.degree_sub(q, des), Int(des_rank)));
    const Sub lifted = h.preimage(x, proj, des);
    d.chain.push_back(lifted);
    d.ranks.push_back(h.sub_rank(x, lifted));
    d.degrees.push_back(h.degree_sub(x, lifted));
    if (d.ranks.back() == d.total_rank) break;
    auto [q2, pi] = h.quotient(q, des);
    proj = h.compose(pi, proj);
    q = std::move(q2);
  }
  for (size_t i = 1; i < d.slopes.size(); ++i)
    if (d.slopes[i].compare(d.slopes[i - 1]) >= 0)
      throw engine_error("subquotient slopes fail to decrease strictly");
  return d;
}

// Subquotient chain[i]/chain[i-1] with its induced-then-quotient
// structure, rebased to its own coordinates.
template <HnHost H>
typename H::Obj subquotient(const H& h, const typename H::Obj& x, const HnDecomposition<H>& d,
                            size_t i) {
  if (i == 0 || i >= d.chain.size()) throw engine_error("subquotient index out of range");
  const typename H::Obj sub = h.sub_object(x, d.chain[i]);
  const typename H::Sub below = h.restrict_sub(x, d.chain[i], d.chain[i - 1]);
  return h.quotient(sub, below).first;
}

template <HnHost H>
bool is_semistable(const H& h, const typename H::Obj& x) {
  if (h.is_zero_obj(x)) throw value_error("semistability of the zero object");
  const typename H::Sub des = h.destabilizer(x);
  const ExactSlope top = ExactSlope::from_degree(h.degree_sub(x, des), Int(h.sub_rank(x, des)));
  return top.compare(slope(h, x)) == 0;
}

template <HnHost H>
ExactSlope mu_max(const H& h, const typename H::Obj& x) {
  if (h.is_zero_obj(x)) return ExactSlope::negative_infinity();
  return hn_sequence(h, x).slopes.front();
}

template <HnHost H>
ExactSlope mu_min(const H& h, const typename H::Obj& x) {
  if (h.is_zero_obj(x)) return ExactSlope::positive_infinity();
  return hn_sequence(h, x).slopes.back();
}

template <typename H>
ExactSlope mu_max(const HnDecomposition<H>& d) {
  return d.is_zero() ? ExactSlope::negative_infinity() : d.slopes.front();
}

template <typename H>
ExactSlope mu_min(const HnDecomposition<H>& d) {
  return d.is_zero() ? ExactSlope::positive_infinity() : d.slopes.back();
}

// The R-indexed filtration: value at level s is the largest chain member
// whose subquotient slopes are all >= s. Breakpoints are exactly the
// subquotient slopes; the zero object gets the constant zero filtration.
template <typename H>
StepFiltration<typename H::Sub, ExactSlope> hn_filtration(const HnDecomposition<H>& d) {
  StepFiltration<typename H::Sub, ExactSlope> f;
  f.orientation = Orientation::left_continuous;
  if (d.is_zero()) {
    f.values.push_back(d.chain[0]);
    return f;
  }
  f.breakpoints = d.slopes;
  f.values = d.chain;
  return f;
}

template <HnHost H>
StepFiltration<typename H::Sub, ExactSlope> hn_filtration(const H& h, const typename H::Obj& x) {
  return hn_filtration(hn_sequence(h, x));
}

// Converts slope breakpoints to plain rationals (rational-scale hosts).
template <typename Sub>
StepFiltration<Sub, Rat> to_rational_filtration(const StepFiltration<Sub, ExactSlope>& f) {
  StepFiltration<Sub, Rat> out;
  out.orientation = f.orientation;
  out.values = f.values;
  for (const auto& b : f.breakpoints) out.breakpoints.push_back(b.rational_value());
  return out;
}

template <typename H>
Polygon hn_polygon(const HnDecomposition<H>& d) {
  Polygon p;
  if (d.is_zero()) return p;
  p.vertices.push_back({Rat(0), ExactSlope::zero(d.scale)});
  Rat t(0);
  ExactSlope h = ExactSlope::zero(d.scale);
  for (size_t i = 0; i < d.slopes.size(); ++i) {
    Rat dt(d.ranks[i + 1] - d.ranks[i], d.total_rank);
    dt.canonicalize();
    t += dt;
    h = h + d.slopes[i].scaled(dt);
    p.vertices.push_back({t, h});
  }
  return p;
}

template <typename H>
DiracMeasure hn_measure(const HnDecomposition<H>& d) {
  DiracMeasure m;
  for (size_t i = 0; i < d.slopes.size(); ++i) {
    Rat mass(d.ranks[i + 1] - d.ranks[i], d.total_rank);
    mass.canonicalize();
    m.atoms.push_back({d.slopes[i], mass});
  }
  return m;
}

template <HnHost H>
Polygon hn_polygon(const H& h, const typename H::Obj& x) {
  return hn_polygon(hn_sequence(h, x));
}

template <HnHost H>
DiracMeasure hn_measure(const H& h, const typename H::Obj& x) {
  return hn_measure(hn_sequence(h, x));
}

// Polygon of a separated exhaustive left filtration with slope-valued
// breakpoints, computed in the model category (where the filtration is
// its own canonical one): slopes are the breakpoints, interval lengths
// the normalized rank jumps.
template <typename Ops, typename Sub>
Polygon filtration_polygon(const Ops& ops, const StepFiltration<Sub, ExactSlope>& f) {
  const auto canon = canonicalize(ops, f);
  Polygon p;
  const int total = ops.rank(canon.values.back());
  if (total == 0) return p;
  const Scale sc = canon.breakpoints.empty() ? Scale::rational : canon.breakpoints[0].scale();
  p.vertices.push_back({Rat(0), ExactSlope::zero(sc)});
  Rat t(0);
  ExactSlope h = ExactSlope::zero(sc);
  int prev_rank = 0;
  for (size_t i = 0; i < canon.breakpoints.size(); ++i) {
    const int r = ops.rank(canon.values[i + 1]);
    Rat dt(r - prev_rank, total);
    dt.canonicalize();
    t += dt;
    h = h + canon.breakpoints[i].scaled(dt);
    p.vertices.push_back({t, h});
    prev_rank = r;
  }
  return p;
}

struct MorphismTraits {
  bool is_zero = false;
  bool is_mono = false;
  bool is_epi = false;
};

struct SlopeGapReport {
  bool hom_gap_ok = true;        // nonzero map: mu_min(X) <= mu_max(Y)
  bool mono_ok = true;           // mono: mu_max(X) <= mu_max(Y)
  bool epi_ok = true;            // epi: mu_min(X) <= mu_min(Y)
  bool semistable_gap_ok = true; // semistable with strict gap: map is zero
  bool all_ok() const { return hom_gap_ok && mono_ok && epi_ok && semistable_gap_ok; }
};

template <HnHost H>
SlopeGapReport verify_hom_slope_gap(const H& h, const typename H::Obj& x,
                                    const typename H::Obj& y, const MorphismTraits& f) {
  SlopeGapReport rep;
  const auto dx = hn_sequence(h, x);
  const auto dy = hn_sequence(h, y);
  if (!f.is_zero) rep.hom_gap_ok = mu_min(dx).compare(mu_max(dy)) <= 0;
  if (f.is_mono) rep.mono_ok = mu_max(dx).compare(mu_max(dy)) <= 0;
  if (f.is_epi) rep.epi_ok = mu_min(dx).compare(mu_min(dy)) <= 0;
  if (!h.is_zero_obj(x) && !h.is_zero_obj(y) && dx.length() == 1 && dy.length() == 1 &&
      dx.slopes[0].compare(dy.slopes[0]) > 0)
    rep.semistable_gap_ok = f.is_zero;
  return rep;
}

// Certifies that a structure-compatible morphism carries the canonical
// filtration of x into that of y; a violation reports the offending
// level and signals a host-category bug.
template <HnHost H, typename OpsY, typename ImageFn>
FiltrationMorphismWitness<typename H::Sub, ExactSlope> induced_hn_morphism(
    const H& h, const OpsY& yops, const typename H::Obj& x, const typename H::Obj& y,
    ImageFn&& image) {
  const auto fx = hn_filtration(h, x);
  const auto fy = hn_filtration(h, y);
  return compatibility_witness(yops, fx, fy, image);
}

struct IsoDegreeReport {
  bool slope_le = false;
  bool degree_le = false;
  bool all_ok() const { return slope_le && degree_le; }
};

template <HnHost H>
IsoDegreeReport compare_iso_degrees(const H& h, const typename H::Obj& x,
                                    const typename H::Obj& y) {
  IsoDegreeReport rep;
  rep.slope_le = slope(h, x).compare(slope(h, y)) <= 0;
  rep.degree_le =
      h.degree_sub(x, h.full_sub(x)).compare(h.degree_sub(y, h.full_sub(y))) <= 0;
  return rep;
}

// Transport check: apply an exact rank-preserving hook to the values of
// the canonical filtration and recompute polygon and measure in the
// model category; both must agree with the originals exactly. The
// identity hook is the idempotence check.
template <HnHost H, typename OpsOut, typename Hook>
bool polygon_transport_check(const H& h, const OpsOut& out_ops, const typename H::Obj& x,
                             Hook&& hook) {
  const auto d = hn_sequence(h, x);
  const auto filt = hn_filtration(d);
  const auto mapped = map_values<OpsOut, typename OpsOut::Sub>(out_ops, filt, hook);
  const Polygon transported = filtration_polygon(out_ops, mapped);
  const Polygon original = hn_polygon(d);
  if (!polygon_equal(transported, original)) return false;
  const DiracMeasure ma = polygon_to_measure(transported);
  const DiracMeasure mb = hn_measure(d);
  return measure_equal(ma, mb);
}

}  // namespace hn
