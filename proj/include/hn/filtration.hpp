#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hn/value.hpp"

namespace hn {

struct filtration_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Orientation { left_continuous, right_continuous };

// A finite-length step filtration of an ambient object, indexed by a
// totally ordered exact index type (rational weights for host flags,
// ExactSlope for Harder-Narasimhan filtrations).
//
// breakpoints b[0] > b[1] > ... > b[n-1], values U[0] <= ... <= U[n]
// (containment order, U[k] is a subobject handle of the host).
//
// left orientation:  F(x) = U[0] for x > b[0], U[i] on (b[i], b[i-1]],
//                    U[n] for x <= b[n-1].
// right orientation: F(x) = U[0] for x >= b[0], U[i] on [b[i], b[i-1]),
//                    U[n] for x < b[n-1].
//
// The trivial filtration of X is breakpoints = {}, values = {full}.
template <typename Sub, typename Index>
struct StepFiltration {
  Orientation orientation = Orientation::left_continuous;
  std::vector<Index> breakpoints;
  std::vector<Sub> values;

  static StepFiltration trivial(Sub full) {
    StepFiltration f;
    f.values.push_back(std::move(full));
    return f;
  }

  bool is_trivial_shape() const { return breakpoints.empty(); }
};

// Subobject-lattice operations a host category must provide: rank, the
// containment/equality tests, meet/join and the zero and full subobjects
// of a fixed ambient object.
template <typename Ops, typename Sub = typename Ops::Sub>
concept SubobjectOps = requires(const Ops& ops, const Sub& a, const Sub& b) {
  { ops.rank(a) } -> std::convertible_to<int>;
  { ops.equal(a, b) } -> std::convertible_to<bool>;
  { ops.contains(a, b) } -> std::convertible_to<bool>;  // a >= b
  { ops.meet(a, b) } -> std::convertible_to<Sub>;
  { ops.join(a, b) } -> std::convertible_to<Sub>;
  { ops.zero() } -> std::convertible_to<Sub>;
  { ops.full() } -> std::convertible_to<Sub>;
};

namespace detail {
template <typename Index>
void require_strictly_decreasing(const std::vector<Index>& v, const char* what) {
  for (size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) throw filtration_error(std::string(what) + ": breakpoints not strictly decreasing");
}
}  // namespace detail

template <typename Ops, typename Sub, typename Index>
void validate(const Ops& ops, const StepFiltration<Sub, Index>& f) {
  if (f.values.size() != f.breakpoints.size() + 1)
    throw filtration_error("step filtration: values/breakpoints size mismatch");
  detail::require_strictly_decreasing(f.breakpoints, "validate");
  for (size_t i = 1; i < f.values.size(); ++i)
    if (!ops.contains(f.values[i], f.values[i - 1]))
      throw filtration_error("step filtration: values not increasing");
}

// F(x) per the orientation semantics above.
template <typename Ops, typename Sub, typename Index>
const Sub& eval(const Ops&, const StepFiltration<Sub, Index>& f, const Index& x) {
  size_t idx = 0;
  for (const Index& b : f.breakpoints) {
    const bool counts = f.orientation == Orientation::left_continuous ? !(b < x) : x < b;
    if (counts)
      ++idx;
    else
      break;
  }
  return f.values[idx];
}

// Collapses repeated consecutive values; afterwards the breakpoint list
// is exactly the minimal jumping set.
template <typename Ops, typename Sub, typename Index>
StepFiltration<Sub, Index> canonicalize(const Ops& ops, const StepFiltration<Sub, Index>& f) {
  validate(ops, f);
  StepFiltration<Sub, Index> out;
  out.orientation = f.orientation;
  out.values.push_back(f.values[0]);
  for (size_t i = 0; i < f.breakpoints.size(); ++i) {
    if (ops.equal(f.values[i + 1], out.values.back())) continue;
    out.breakpoints.push_back(f.breakpoints[i]);
    out.values.push_back(f.values[i + 1]);
  }
  return out;
}

template <typename Ops, typename Sub, typename Index>
std::vector<Index> minimal_jumping_set(const Ops& ops, const StepFiltration<Sub, Index>& f) {
  return canonicalize(ops, f).breakpoints;
}

struct Classification {
  bool separated = false;   // smallest value is the zero subobject
  bool exhaustive = false;  // largest value is the full subobject
};

template <typename Ops, typename Sub, typename Index>
Classification classify(const Ops& ops, const StepFiltration<Sub, Index>& f) {
  validate(ops, f);
  Classification c;
  c.separated = ops.equal(f.values.front(), ops.zero());
  c.exhaustive = ops.equal(f.values.back(), ops.full());
  return c;
}

// (left locally constant at x, right locally constant at x). A finite
// step filtration is locally constant away from its minimal jumping set;
// at a jump only the side matching the orientation stays constant.
template <typename Ops, typename Sub, typename Index>
std::pair<bool, bool> locally_constant_at(const Ops& ops, const StepFiltration<Sub, Index>& f,
                                          const Index& x) {
  const auto jumps = minimal_jumping_set(ops, f);
  const bool at_jump = std::find(jumps.begin(), jumps.end(), x) != jumps.end();
  if (!at_jump) return {true, true};
  if (f.orientation == Orientation::left_continuous) return {true, false};
  return {false, true};
}

// Orientation changes reassign interval-boundary membership on the same
// breakpoint/value data; both are idempotent and mutually inverse on the
// chain data.
template <typename Sub, typename Index>
StepFiltration<Sub, Index> left_continuize(StepFiltration<Sub, Index> f) {
  f.orientation = Orientation::left_continuous;
  return f;
}

template <typename Sub, typename Index>
StepFiltration<Sub, Index> right_continuize(StepFiltration<Sub, Index> f) {
  f.orientation = Orientation::right_continuous;
  return f;
}

// Inverse image along a morphism with the given preimage hook
// (f*G)(x) = preimage(G(x)). Requires a left-oriented input; preserves
// orientation and finite length.
template <typename Ops, typename Sub, typename Index, typename PreimageFn>
StepFiltration<Sub, Index> pullback(const Ops& target_ops, const StepFiltration<Sub, Index>& g,
                                    PreimageFn&& preimage) {
  if (g.orientation != Orientation::left_continuous)
    throw filtration_error("pullback expects a left-oriented filtration");
  StepFiltration<Sub, Index> out;
  out.orientation = g.orientation;
  out.breakpoints = g.breakpoints;
  out.values.reserve(g.values.size());
  for (const Sub& v : g.values) out.values.push_back(preimage(v));
  return canonicalize(target_ops, out);
}

// Weak direct image (f_b F)(x) = image(F(x)).
template <typename Ops, typename Sub, typename Index, typename ImageFn>
StepFiltration<Sub, Index> pushforward_weak(const Ops& target_ops,
                                            const StepFiltration<Sub, Index>& f, ImageFn&& image) {
  if (f.orientation != Orientation::left_continuous)
    throw filtration_error("pushforward expects a left-oriented filtration");
  StepFiltration<Sub, Index> out;
  out.orientation = f.orientation;
  out.breakpoints = f.breakpoints;
  out.values.reserve(f.values.size());
  for (const Sub& v : f.values) out.values.push_back(image(v));
  return canonicalize(target_ops, out);
}

// Strong direct image: the left-continuization of the weak one. For
// finite step data the two coincide; tests assert this rather than
// assume it for anything larger.
template <typename Ops, typename Sub, typename Index, typename ImageFn>
StepFiltration<Sub, Index> pushforward_strong(const Ops& target_ops,
                                              const StepFiltration<Sub, Index>& f, ImageFn&& image) {
  return left_continuize(pushforward_weak(target_ops, f, image));
}

// Certificate that a morphism is compatible with a pair of filtrations:
// inclusions image(F(x)) <= G(x) sampled at the union of the two minimal
// jumping sets plus the constant region above all breakpoints.
template <typename Sub, typename Index>
struct FiltrationMorphismWitness {
  bool holds = false;
  bool upper_region_ok = false;
  std::vector<Index> sample_points;
  std::vector<std::pair<Sub, Sub>> inclusions;  // (image of F(x), G(x))
  std::optional<Index> violating_index;
};

template <typename Index>
std::vector<Index> merge_decreasing(const std::vector<Index>& a, const std::vector<Index>& b) {
  std::vector<Index> out;
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (i == a.size())
      out.push_back(b[j++]);
    else if (j == b.size())
      out.push_back(a[i++]);
    else if (b[j] < a[i])
      out.push_back(a[i++]);
    else if (a[i] < b[j])
      out.push_back(b[j++]);
    else {
      out.push_back(a[i++]);
      ++j;
    }
  }
  return out;
}

// True iff image(F(x)) <= G(x) for all x; by step constancy it is enough
// to test the union of minimal jumping sets and the region above every
// breakpoint (the latter is vacuous for separated F).
template <typename OpsY, typename Sub, typename Index, typename ImageFn>
FiltrationMorphismWitness<Sub, Index> compatibility_witness(const OpsY& target_ops,
                                                            const StepFiltration<Sub, Index>& f,
                                                            const StepFiltration<Sub, Index>& g,
                                                            ImageFn&& image) {
  FiltrationMorphismWitness<Sub, Index> w;
  w.sample_points = merge_decreasing(f.breakpoints, g.breakpoints);
  const Sub top_image = image(f.values[0]);
  w.upper_region_ok = target_ops.contains(g.values[0], top_image);
  w.holds = w.upper_region_ok;
  for (const Index& x : w.sample_points) {
    const Sub fi = image(eval(target_ops, f, x));
    const Sub& gi = eval(target_ops, g, x);
    w.inclusions.emplace_back(fi, gi);
    if (!target_ops.contains(gi, fi)) {
      w.holds = false;
      if (!w.violating_index) w.violating_index = x;
    }
  }
  return w;
}

template <typename OpsY, typename Sub, typename Index, typename ImageFn>
bool is_compatible(const OpsY& target_ops, const StepFiltration<Sub, Index>& f,
                   const StepFiltration<Sub, Index>& g, ImageFn&& image) {
  return compatibility_witness(target_ops, f, g, image).holds;
}

// H(x) = F(x) (+) G(x) inside the host's direct sum; the embed hooks send
// subobjects of the summands into the sum.
template <typename OpsSum, typename Sub, typename Index, typename EmbedL, typename EmbedR>
StepFiltration<Sub, Index> direct_sum(const OpsSum& sum_ops, const StepFiltration<Sub, Index>& f,
                                      const StepFiltration<Sub, Index>& g, EmbedL&& embed_left,
                                      EmbedR&& embed_right) {
  if (f.orientation != g.orientation) throw filtration_error("direct_sum: orientation mismatch");
  if (f.orientation != Orientation::left_continuous)
    throw filtration_error("direct_sum expects left-oriented filtrations");
  StepFiltration<Sub, Index> out;
  out.orientation = f.orientation;
  out.breakpoints = merge_decreasing(f.breakpoints, g.breakpoints);
  out.values.reserve(out.breakpoints.size() + 1);
  for (size_t i = 0; i <= out.breakpoints.size(); ++i) {
    // Value on the interval below breakpoint i-1 (above breakpoint i).
    const Sub fv = i == 0 ? f.values[0] : eval(sum_ops, f, out.breakpoints[i - 1]);
    const Sub gv = i == 0 ? g.values[0] : eval(sum_ops, g, out.breakpoints[i - 1]);
    out.values.push_back(sum_ops.join(embed_left(fv), embed_right(gv)));
  }
  return canonicalize(sum_ops, out);
}

// Pointwise meet of two filtrations of the same ambient object on the
// merged breakpoint set.
template <typename Ops, typename Sub, typename Index>
StepFiltration<Sub, Index> pointwise_meet(const Ops& ops, const StepFiltration<Sub, Index>& f,
                                          const StepFiltration<Sub, Index>& g) {
  if (f.orientation != g.orientation || f.orientation != Orientation::left_continuous)
    throw filtration_error("pointwise_meet expects left-oriented filtrations");
  StepFiltration<Sub, Index> out;
  out.orientation = f.orientation;
  out.breakpoints = merge_decreasing(f.breakpoints, g.breakpoints);
  for (size_t i = 0; i <= out.breakpoints.size(); ++i) {
    const Sub& fv = i == 0 ? f.values[0] : eval(ops, f, out.breakpoints[i - 1]);
    const Sub& gv = i == 0 ? g.values[0] : eval(ops, g, out.breakpoints[i - 1]);
    out.values.push_back(ops.meet(fv, gv));
  }
  return canonicalize(ops, out);
}

// Applies a functor hook to every value. The hook must send subobjects to
// subobjects monotonically; finite length and local constancy carry over.
template <typename OpsOut, typename SubOut, typename Sub, typename Index, typename Hook>
StepFiltration<SubOut, Index> map_values(const OpsOut& out_ops, const StepFiltration<Sub, Index>& f,
                                         Hook&& hook) {
  StepFiltration<SubOut, Index> out;
  out.orientation = f.orientation;
  out.breakpoints = f.breakpoints;
  out.values.reserve(f.values.size());
  for (const Sub& v : f.values) out.values.push_back(hook(v));
  return canonicalize(out_ops, out);
}

// Degree of a separated, exhaustive, left-oriented finite filtration in
// the model category: sum of b[i] * (rank(U[i+1]) - rank(U[i])) over the
// minimal jumping set, with rank 0 above the top breakpoint.
template <typename Ops, typename Sub>
ExactDegree model_degree(const Ops& ops, const StepFiltration<Sub, Rat>& f) {
  if (f.orientation != Orientation::left_continuous)
    throw filtration_error("model_degree expects a left-oriented filtration");
  const auto cls = classify(ops, f);
  if (!cls.separated || !cls.exhaustive)
    throw filtration_error("model_degree expects a separated and exhaustive filtration");
  Rat total(0);
  int prev_rank = 0;
  const auto canon = canonicalize(ops, f);
  for (size_t i = 0; i < canon.breakpoints.size(); ++i) {
    const int r = ops.rank(canon.values[i + 1]);
    total += canon.breakpoints[i] * Rat(r - prev_rank);
    prev_rank = r;
  }
  return ExactDegree::rational(total);
}

// Exact filtration equality: same orientation and identical canonical
// breakpoint/value chains.
template <typename Ops, typename Sub, typename Index>
bool same_filtration(const Ops& ops, const StepFiltration<Sub, Index>& a,
                     const StepFiltration<Sub, Index>& b) {
  const auto ca = canonicalize(ops, a);
  const auto cb = canonicalize(ops, b);
  if (ca.orientation != cb.orientation) return false;
  if (ca.breakpoints.size() != cb.breakpoints.size()) return false;
  for (size_t i = 0; i < ca.breakpoints.size(); ++i) {
    if (ca.breakpoints[i] < cb.breakpoints[i] || cb.breakpoints[i] < ca.breakpoints[i]) return false;
  }
  for (size_t i = 0; i < ca.values.size(); ++i)
    if (!ops.equal(ca.values[i], cb.values[i])) return false;
  return true;
}

}  // namespace hn
