#include "hn/multifilt.hpp"

#include <algorithm>
#include <sstream>

#include "hn/generators.hpp"

namespace hn {

void validate(const MultiFiltSpace& x) {
  if (x.alpha.size() != x.filtrations.size())
    throw filtration_error("multifilt: alpha/filtration count mismatch");
  const auto ops = x.ops();
  for (const Rat& a : x.alpha)
    if (a < 0) throw filtration_error("multifilt: negative weight");
  for (const auto& f : x.filtrations) {
    if (f.orientation != Orientation::left_continuous)
      throw filtration_error("multifilt: filtration must be left-oriented");
    const auto cls = classify(ops, f);
    if (!cls.separated || !cls.exhaustive)
      throw filtration_error("multifilt: filtration must be separated and exhaustive");
  }
}

namespace {

// Degree of u against one flag: sum of w_i * (rank(V_i meet u) - rank(V_{i-1} meet u)).
Rat flag_degree(const FpFiltration& f, const SubspaceFp& u) {
  Rat total(0);
  int prev = 0;
  for (size_t i = 0; i < f.breakpoints.size(); ++i) {
    const int r = subspace_intersect(f.values[i + 1], u).rank();
    total += f.breakpoints[i] * Rat(r - prev);
    prev = r;
  }
  return total;
}

bool better(const ExactSlope& s1, int r1, const ExactSlope& s2, int r2) {
  const int c = s1.compare(s2);
  if (c != 0) return c > 0;
  return r1 > r2;
}

}  // namespace

ExactDegree degree(const MultiFiltSpace& x, const SubspaceFp& u) {
  Rat total(0);
  for (size_t k = 0; k < x.filtrations.size(); ++k)
    total += x.alpha[k] * flag_degree(x.filtrations[k], u);
  return ExactDegree::rational(total);
}

ExactDegree degree(const MultiFiltSpace& x) {
  return degree(x, SubspaceFp::full(x.p, x.dim));
}

ExactSlope subspace_slope(const MultiFiltSpace& x, const SubspaceFp& u) {
  if (u.is_zero()) throw value_error("slope of the zero subspace");
  return ExactSlope::from_degree(degree(x, u), Int(u.rank()));
}

SubspaceFp destabilizer_bruteforce(const MultiFiltSpace& x, const DestabConfig& cfg) {
  if (x.dim == 0) throw oracle_error("destabilizer of the zero space");
  const Int count = count_subspaces(x.p, x.dim);
  if (count > cfg.enum_ceiling)
    throw budget_error("brute-force enumeration over ceiling: " + count.get_str());
  std::optional<SubspaceFp> best;
  ExactSlope best_slope = ExactSlope::negative_infinity();
  int best_rank = 0;
  bool tie = false;
  enumerate_subspaces(x.p, x.dim, [&](const SubspaceFp& s) {
    if (s.is_zero()) return true;
    const ExactSlope mu = subspace_slope(x, s);
    if (!best || better(mu, s.rank(), best_slope, best_rank)) {
      best = s;
      best_slope = mu;
      best_rank = s.rank();
      tie = false;
    } else if (mu.compare(best_slope) == 0 && s.rank() == best_rank && !(s == *best)) {
      tie = true;
    }
    return true;
  });
  if (tie) throw tie_error("distinct subspaces tie on (slope, rank) at the top");
  return *best;
}

std::vector<SubspaceFp> filtration_step_closure(const MultiFiltSpace& x, size_t cap) {
  std::vector<SubspaceFp> items;
  auto add = [&](const SubspaceFp& s) {
    if (std::find(items.begin(), items.end(), s) == items.end()) items.push_back(s);
  };
  add(SubspaceFp::full(x.p, x.dim));
  for (const auto& f : x.filtrations)
    for (const auto& v : f.values) add(v);
  size_t processed = 0;
  while (processed < items.size()) {
    const SubspaceFp cur = items[processed++];
    const size_t n = items.size();
    for (size_t i = 0; i < n; ++i) {
      add(subspace_sum(cur, items[i]));
      add(subspace_intersect(cur, items[i]));
      if (items.size() > cap) throw budget_error("closure lattice over cap");
    }
  }
  return items;
}

SubspaceFp destabilizer_closure(const MultiFiltSpace& x, const DestabConfig& cfg) {
  if (x.dim == 0) throw oracle_error("destabilizer of the zero space");
  const auto closure = filtration_step_closure(x, cfg.closure_cap);
  ExactSlope best_slope = ExactSlope::negative_infinity();
  for (const auto& s : closure) {
    if (s.is_zero()) continue;
    const ExactSlope mu = subspace_slope(x, s);
    if (mu.compare(best_slope) > 0) best_slope = mu;
  }
  if (!best_slope.is_finite()) throw oracle_error("closure search found no candidate");
  // The closure is closed under sums and the sum of two top-slope members
  // attains the top slope again, so summing every attainer yields the
  // unique maximal-rank attainer inside the closure.
  SubspaceFp result = SubspaceFp::zero(x.p, x.dim);
  for (const auto& s : closure) {
    if (s.is_zero()) continue;
    if (subspace_slope(x, s).compare(best_slope) == 0) result = subspace_sum(result, s);
  }
  if (subspace_slope(x, result).compare(best_slope) != 0)
    throw oracle_error("closure attainer sum lost the top slope");
  return result;
}

SubspaceFp MultiFiltHost::destabilizer(const Obj& x) const {
  if (count_subspaces(x.p, x.dim) <= cfg.enum_ceiling) return destabilizer_bruteforce(x, cfg);
  return destabilizer_closure(x, cfg);
}

FpQuotient quotient_structure(const MultiFiltSpace& x, const SubspaceFp& u) {
  if (!(u.p == x.p && u.dim == x.dim)) throw fp_error("quotient: subspace mismatch");
  const std::vector<int> piv = u.pivots();
  std::vector<bool> is_piv(x.dim, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<int> rest;
  for (int j = 0; j < x.dim; ++j)
    if (!is_piv[j]) rest.push_back(j);
  // v mod U: eliminate the pivot coordinates with u's rows, then read off
  // the complement coordinates. This is linear, so assemble the matrix.
  FpMat proj(x.p, x.dim, int(rest.size()));
  for (int i = 0; i < x.dim; ++i) {
    std::vector<int> v(x.dim, 0);
    v[i] = 1;
    for (int k = 0; k < u.basis.rows; ++k) {
      const int c = v[piv[k]] % x.p;
      if (c)
        for (int j = 0; j < x.dim; ++j) v[j] = ((v[j] - c * u.basis.at(k, j)) % x.p + x.p) % x.p;
    }
    for (size_t j = 0; j < rest.size(); ++j) proj.at(i, int(j)) = uint8_t(v[rest[j]]);
  }
  FpQuotient out;
  out.projection = proj;
  out.section = FpMat(x.p, int(rest.size()), x.dim);
  for (size_t j = 0; j < rest.size(); ++j) out.section.at(int(j), rest[j]) = 1;
  out.space.p = x.p;
  out.space.dim = int(rest.size());
  out.space.alpha = x.alpha;
  const FpSubspaceOps qops{x.p, out.space.dim};
  for (const auto& f : x.filtrations)
    out.space.filtrations.push_back(
        pushforward_strong(qops, f, [&](const SubspaceFp& v) { return subspace_image(proj, v); }));
  return out;
}

MultiFiltSpace induced_structure(const MultiFiltSpace& x, const SubspaceFp& u) {
  MultiFiltSpace out;
  out.p = x.p;
  out.dim = u.rank();
  out.alpha = x.alpha;
  const FpSubspaceOps sops{x.p, out.dim};
  for (const auto& f : x.filtrations) {
    out.filtrations.push_back(pullback(sops, f, [&](const SubspaceFp& v) {
      return SubspaceFp::from_rows(coordinates_in(u, subspace_intersect(v, u)));
    }));
  }
  return out;
}

bool map_compatible(const FpMat& f, const MultiFiltSpace& x, const MultiFiltSpace& y) {
  // Both objects must live in one category: same flag count and the same
  // category-level weight vector.
  if (x.filtrations.size() != y.filtrations.size() || x.alpha != y.alpha)
    throw filtration_error("map_compatible: objects from different categories");
  const auto yops = y.ops();
  for (size_t k = 0; k < x.filtrations.size(); ++k) {
    if (!is_compatible(yops, x.filtrations[k], y.filtrations[k],
                       [&](const SubspaceFp& v) { return subspace_image(f, v); }))
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Axiom suite

namespace {

using Filt = FpFiltration;

Filt push_filt(const FpSubspaceOps& ops, const Filt& f, const FpMat& m) {
  return pushforward_strong(ops, f, [&](const SubspaceFp& v) { return subspace_image(m, v); });
}

Filt pull_filt(const FpSubspaceOps& ops, const Filt& f, const FpMat& m) {
  return pullback(ops, f, [&](const SubspaceFp& v) { return subspace_preimage(m, v); });
}

bool spaces_equal(const MultiFiltSpace& a, const MultiFiltSpace& b) {
  if (a.p != b.p || a.dim != b.dim || a.filtrations.size() != b.filtrations.size()) return false;
  const FpSubspaceOps ops{a.p, a.dim};
  for (size_t k = 0; k < a.filtrations.size(); ++k)
    if (!same_filtration(ops, a.filtrations[k], b.filtrations[k])) return false;
  return true;
}

// Structures moved through an isomorphism matrix (row convention).
MultiFiltSpace push_space(const MultiFiltSpace& a, const FpMat& iso, int out_dim) {
  MultiFiltSpace out;
  out.p = a.p;
  out.dim = out_dim;
  out.alpha = a.alpha;
  const FpSubspaceOps ops{a.p, out_dim};
  for (const auto& f : a.filtrations) out.filtrations.push_back(push_filt(ops, f, iso));
  return out;
}

FpMat fp_inverse_matrix(const FpMat& g) {
  const int d = g.rows;
  FpMat m(g.p, d, 2 * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      m.at(i, j) = g.at(i, j);
      m.at(i, d + j) = (i == j) ? 1 : 0;
    }
  if (int(rref_in_place(m).size()) != d) throw fp_error("matrix not invertible");
  FpMat inv(g.p, d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) inv.at(i, j) = m.at(i, d + j);
  return inv;
}

std::string tag(const char* axiom, uint64_t seed, int trial) {
  std::ostringstream os;
  os << axiom << " seed=" << seed << " trial=" << trial;
  return os.str();
}

}  // namespace

AxiomReport axiom_suite(int p, int d, int n_filtrations, int trials, uint64_t seed) {
  AxiomReport rep;
  Rng rng(seed);
  auto fail = [&](const char* axiom, int t) {
    rep.failures++;
    rep.counterexamples.push_back(tag(axiom, seed, t));
  };
  for (int t = 0; t < trials; ++t) {
    rep.trials++;
    const MultiFiltSpace z = random_multifilt(rng, p, d, n_filtrations);
    const SubspaceFp ysub = random_subspace(rng, p, d);
    const SubspaceFp xsub = random_subspace_between(rng, SubspaceFp::zero(p, d), ysub);

    // A2: (ji)* = i* j* on a chain X <= Y <= ambient.
    {
      const MultiFiltSpace zy = induced_structure(z, ysub);
      const SubspaceFp x_in_y = SubspaceFp::from_rows(coordinates_in(ysub, xsub));
      const MultiFiltSpace via_y = induced_structure(zy, x_in_y);
      const MultiFiltSpace direct = induced_structure(z, xsub);
      if (!spaces_equal(via_y, direct)) fail("A2", t);
    }

    // A3: (qp)_* = q_* p_* on a tower of quotients.
    {
      const SubspaceFp k1 = random_subspace(rng, p, d);
      const auto q1 = quotient_structure(z, k1);
      const SubspaceFp k2 = random_subspace(rng, p, q1.space.dim);
      const auto q2 = quotient_structure(q1.space, k2);
      const SubspaceFp k_total = subspace_preimage(q1.projection, k2);
      const auto direct = quotient_structure(z, k_total);
      // Canonical isomorphism direct -> iterated: section, then both
      // projections.
      const FpMat iso = direct.section * (q1.projection * q2.projection);
      if (!spaces_equal(push_space(direct.space, iso, q2.space.dim), q2.space)) fail("A3", t);
    }

    // A4: identity laws.
    {
      const MultiFiltSpace ind = induced_structure(z, SubspaceFp::full(p, d));
      const auto quo = quotient_structure(z, SubspaceFp::zero(p, d));
      if (!spaces_equal(ind, z) || !spaces_equal(quo.space, z)) fail("A4", t);
    }

    // A5: f* f_* = id and f_* f* = id along a random change of basis.
    {
      const FpMat g = random_invertible_fp(rng, p, d);
      const FpMat ginv = fp_inverse_matrix(g);
      const auto zops = z.ops();
      bool ok = true;
      for (size_t k = 0; ok && k < z.filtrations.size(); ++k) {
        const Filt& f = z.filtrations[k];
        const Filt pushed = push_filt(zops, f, g);
        ok = same_filtration(zops, pull_filt(zops, pushed, g), f) &&
             same_filtration(zops, push_filt(zops, pushed, ginv), f) &&
             same_filtration(zops, push_filt(zops, pull_filt(zops, f, g), g), f);
      }
      if (!ok) fail("A5", t);
    }

    // A6: v* q_* = p_* u* on the cartesian square built from K <= X <= Y.
    {
      const SubspaceFp xs = ysub;
      const SubspaceFp ks = xsub;
      const auto w = quotient_structure(z, ks);
      const SubspaceFp z_img = subspace_image(w.projection, xs);
      const MultiFiltSpace lhs = induced_structure(w.space, z_img);
      const MultiFiltSpace xind = induced_structure(z, xs);
      const SubspaceFp k_in_x = SubspaceFp::from_rows(coordinates_in(xs, ks));
      const auto rhs = quotient_structure(xind, k_in_x);
      // Canonical isomorphism X/K -> Z: section into X-coordinates, out
      // through X's basis, project into W, read off Z-coordinates.
      const FpMat to_w = rhs.section * (xs.basis * w.projection);
      FpMat iso(p, rhs.space.dim, lhs.dim);
      const auto zpiv = z_img.pivots();
      for (int i = 0; i < rhs.space.dim; ++i)
        for (size_t kk = 0; kk < zpiv.size(); ++kk) iso.at(i, int(kk)) = to_w.at(i, zpiv[kk]);
      if (!spaces_equal(push_space(rhs.space, iso, lhs.dim), lhs)) fail("A6", t);
    }

    // A7: the gluing witness. For a compatible f the direct-sum
    // filtration H restricts to F along the graph of f and projects to G.
    {
      const int dy = std::max(1, rand_int(rng, 1, d));
      const auto pair = random_compatible_pair(rng, p, d, dy, n_filtrations);
      const int dsum = pair.x.dim + pair.y.dim;
      const FpSubspaceOps sum_ops{p, dsum};
      // graph: X -> X (+) Y, and the second projection.
      FpMat graph(p, pair.x.dim, dsum);
      for (int i = 0; i < pair.x.dim; ++i) {
        graph.at(i, i) = 1;
        for (int j = 0; j < pair.y.dim; ++j) graph.at(i, pair.x.dim + j) = pair.f.at(i, j);
      }
      FpMat pr2(p, dsum, pair.y.dim);
      for (int j = 0; j < pair.y.dim; ++j) pr2.at(pair.x.dim + j, j) = 1;
      auto embed_left = [&](const SubspaceFp& v) {
        FpMat rows(p, v.basis.rows, dsum);
        for (int i = 0; i < v.basis.rows; ++i)
          for (int j = 0; j < v.dim; ++j) rows.at(i, j) = v.basis.at(i, j);
        return SubspaceFp::from_rows(rows);
      };
      auto embed_right = [&](const SubspaceFp& v) {
        FpMat rows(p, v.basis.rows, dsum);
        for (int i = 0; i < v.basis.rows; ++i)
          for (int j = 0; j < v.dim; ++j) rows.at(i, pair.x.dim + j) = v.basis.at(i, j);
        return SubspaceFp::from_rows(rows);
      };
      const FpSubspaceOps xops{p, pair.x.dim};
      const FpSubspaceOps yops{p, pair.y.dim};
      bool ok = true;
      for (size_t k = 0; ok && k < pair.x.filtrations.size(); ++k) {
        const Filt h =
            direct_sum(sum_ops, pair.x.filtrations[k], pair.y.filtrations[k], embed_left, embed_right);
        ok = same_filtration(xops, pull_filt(xops, h, graph), pair.x.filtrations[k]) &&
             same_filtration(yops, push_filt(yops, h, pr2), pair.y.filtrations[k]);
      }
      if (!ok) fail("A7", t);
    }
  }
  return rep;
}

}  // namespace hn
