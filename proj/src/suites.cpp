#include "hn/suites.hpp"

#include <sstream>

#include "hn/engine.hpp"
#include "hn/generators.hpp"

namespace hn {

namespace {

void record(SuiteReport& rep, const std::string& what, const InputDocument& doc) {
  rep.failures++;
  if (rep.counterexamples.size() < 8)
    rep.counterexamples.push_back(what + "\n" + serialize_input(doc));
}

void record(SuiteReport& rep, const std::string& what) {
  rep.failures++;
  if (rep.counterexamples.size() < 8) rep.counterexamples.push_back(what);
}

MultiFiltSpace small_random_multifilt(Rng& rng) {
  const int p = rand_int(rng, 0, 1) ? 2 : 3;
  const int dim = rand_int(rng, 1, 3);
  const int n = rand_int(rng, 1, 2);
  return random_multifilt(rng, p, dim, n);
}

// Rank-weighted subquotient slope sum against the total degree.
template <typename H>
bool slope_sum_matches_degree(const HnDecomposition<H>& d) {
  if (d.is_zero()) return true;
  ExactSlope acc = ExactSlope::zero(d.scale);
  for (size_t i = 0; i < d.slopes.size(); ++i)
    acc = acc + d.slopes[i].scaled(Rat(d.ranks[i + 1] - d.ranks[i]));
  return acc.compare(ExactSlope::from_degree(d.degrees.back(), Int(1))) == 0;
}

}  // namespace

SuiteReport run_axioms_suite(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.name = "axioms";
  Rng rng(cfg.seed);
  // Spread the trials across small shapes; every trial exercises A2..A7.
  const int trials = cfg.trials;
  for (int t = 0; t < trials; ++t) {
    const int p = rand_int(rng, 0, 1) ? 2 : 3;
    const int dim = rand_int(rng, 1, 3);
    const int n = rand_int(rng, 1, 2);
    const AxiomReport r = axiom_suite(p, dim, n, 1, cfg.seed * 7919 + uint64_t(t));
    rep.trials += 1;
    if (!r.passed()) {
      for (const auto& c : r.counterexamples) record(rep, "axiom failure: " + c);
    }
  }
  return rep;
}

SuiteReport run_slopes_suite(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.name = "slopes";
  Rng rng(cfg.seed);
  MultiFiltHost fp_host;
  fp_host.cfg = cfg.fp_cfg;
  LatticeHost lat_host;
  lat_host.cfg = cfg.lattice_cfg;

  for (int t = 0; t < cfg.trials; ++t) {
    rep.trials++;
    // --- multi-filtered host ---
    {
      const MultiFiltSpace x = small_random_multifilt(rng);
      const InputDocument doc = input_from_multifilt(x);
      try {
        const auto d = hn_sequence(fp_host, x);
        if (!slope_sum_matches_degree(d)) record(rep, "slope sum != degree", doc);
        if (!d.is_zero()) {
          const ExactSlope mu = slope(fp_host, x);
          if (!(mu_min(d).compare(mu) <= 0 && mu.compare(mu_max(d)) <= 0))
            record(rep, "mu_min <= mu <= mu_max fails", doc);
          for (size_t i = 1; i < d.chain.size(); ++i) {
            const auto sq = subquotient(fp_host, x, d, i);
            if (!is_semistable(fp_host, sq)) record(rep, "subquotient not semistable", doc);
          }
        }
        // Subobject / quotient slope corollaries on a random subspace.
        Rng sub_rng(cfg.seed * 31 + uint64_t(t));
        const SubspaceFp u = random_subspace(sub_rng, x.p, x.dim);
        if (!u.is_zero() && u.rank() < x.dim) {
          const auto du = hn_sequence(fp_host, induced_structure(x, u));
          if (mu_max(du).compare(mu_max(d)) > 0) record(rep, "mu_max(sub) > mu_max", doc);
          const auto dq = hn_sequence(fp_host, quotient_structure(x, u).space);
          if (mu_min(dq).compare(mu_min(d)) < 0) record(rep, "mu_min(quot) < mu_min", doc);
          // Degree additivity for the induced/quotient pair.
          const ExactDegree lhs = degree(induced_structure(x, u)) + degree(quotient_structure(x, u).space);
          if (!(lhs == degree(x))) record(rep, "degree additivity fails", doc);
        }
      } catch (const oracle_error& e) {
        record(rep, std::string("oracle failure: ") + e.what(), doc);
      }
    }
    // --- compatible map: hom slope gap and HN2 ---
    {
      Rng map_rng(cfg.seed * 101 + uint64_t(t));
      const int p = rand_int(map_rng, 0, 1) ? 2 : 3;
      const auto pair = random_compatible_pair(map_rng, p, rand_int(map_rng, 1, 3),
                                               rand_int(map_rng, 1, 3), rand_int(map_rng, 1, 2));
      if (!map_compatible(pair.f, pair.x, pair.y))
        record(rep, "generator produced an incompatible map", input_from_multifilt(pair.x));
      MorphismTraits traits;
      const int frank = rank_of(pair.f);
      traits.is_zero = frank == 0;
      traits.is_mono = frank == pair.x.dim;
      traits.is_epi = frank == pair.y.dim;
      const auto gap = verify_hom_slope_gap(fp_host, pair.x, pair.y, traits);
      if (!gap.all_ok()) record(rep, "hom slope gap violated", input_from_multifilt(pair.x));
    }
    // --- lattice host ---
    {
      Rng lat_rng(cfg.seed * 211 + uint64_t(t));
      const EuclideanLattice l = random_lattice(lat_rng, rand_int(lat_rng, 1, 3), 2, 3);
      const InputDocument doc = input_from_lattice(l);
      try {
        const auto d = hn_sequence(lat_host, l);
        if (!slope_sum_matches_degree(d)) record(rep, "lattice slope sum != degree", doc);
        const ExactSlope mu = slope(lat_host, l);
        if (!(mu_min(d).compare(mu) <= 0 && mu.compare(mu_max(d)) <= 0))
          record(rep, "lattice mu bounds fail", doc);
        for (size_t i = 1; i < d.chain.size(); ++i) {
          const auto sq = subquotient(lat_host, l, d, i);
          if (!is_semistable(lat_host, sq)) record(rep, "lattice subquotient not semistable", doc);
        }
        // Hom slope gap on a metric-compatible map: scaling the source
        // metric up makes the identity norm-compatible.
        {
          EuclideanLattice shrunk = l;
          const Rat s = Rat(rand_int(lat_rng, 2, 4));
          for (auto& v : shrunk.gram.a) v *= s;
          if (!is_compatible(ZMat::identity(l.rank), shrunk, l))
            record(rep, "scaled identity not compatible", doc);
          MorphismTraits traits;
          traits.is_mono = traits.is_epi = true;
          const auto gap = verify_hom_slope_gap(lat_host, shrunk, l, traits);
          if (!gap.all_ok()) record(rep, "lattice hom slope gap violated", doc);
        }
        // Degree additivity across a random saturated sublattice.
        if (l.rank >= 2) {
          ZMat col(l.rank, 1);
          for (int i = 0; i < l.rank; ++i) col.at(i, 0) = rand_int(lat_rng, -2, 2);
          bool nz = false;
          for (int i = 0; i < l.rank; ++i) nz = nz || col.at(i, 0) != 0;
          if (nz) {
            const Sublattice s = saturate(l, sublattice_from_columns(l, col)).sat;
            if (s.rank() < l.rank) {
              const auto q = quotient_lattice(l, s);
              const ExactDegree lhs = arakelov_degree(l, s) +
                                      arakelov_degree(q.space, Sublattice{ZMat::identity(q.space.rank), true});
              const ExactDegree rhs =
                  arakelov_degree(l, Sublattice{ZMat::identity(l.rank), true});
              if (!(lhs == rhs)) record(rep, "lattice degree additivity fails", doc);
            }
          }
        }
      } catch (const oracle_error& e) {
        record(rep, std::string("lattice oracle failure: ") + e.what(), doc);
      }
    }
  }

  // HN2 vanishing on tiny semistable pairs with a strict gap: every
  // compatible linear map must be zero.
  {
    Rng rng2(cfg.seed * 977);
    int done = 0;
    while (done < std::min(cfg.trials, 60)) {
      const int p = 2;
      const MultiFiltSpace a = random_multifilt(rng2, p, rand_int(rng2, 1, 2), 1);
      MultiFiltSpace b = random_multifilt(rng2, p, rand_int(rng2, 1, 2), 1);
      b.alpha = a.alpha;  // one category, one weight vector
      try {
        if (!is_semistable(fp_host, a) || !is_semistable(fp_host, b)) continue;
      } catch (const value_error&) {
        continue;
      }
      if (slope(fp_host, a).compare(slope(fp_host, b)) <= 0) continue;
      ++done;
      rep.trials++;
      // All maps, exhaustively.
      const int cells = a.dim * b.dim;
      std::vector<uint8_t> digits(cells, 0);
      while (true) {
        FpMat f(p, a.dim, b.dim);
        for (int c = 0; c < cells; ++c) f.a[c] = digits[c];
        bool zero = true;
        for (int c = 0; c < cells; ++c) zero = zero && digits[c] == 0;
        if (!zero && map_compatible(f, a, b))
          record(rep, "HN2: nonzero compatible map across a strict slope gap",
                 input_from_multifilt(a));
        int c = 0;
        for (; c < cells; ++c) {
          if (++digits[c] < p) break;
          digits[c] = 0;
        }
        if (c == cells) break;
      }
    }
  }
  return rep;
}

SuiteReport run_functoriality_suite(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.name = "functoriality";
  Rng rng(cfg.seed);
  MultiFiltHost fp_host;
  fp_host.cfg = cfg.fp_cfg;
  LatticeHost lat_host;
  lat_host.cfg = cfg.lattice_cfg;

  for (int t = 0; t < cfg.trials; ++t) {
    rep.trials++;
    const int p = rand_int(rng, 0, 1) ? 2 : 3;
    const auto pair =
        random_compatible_pair(rng, p, rand_int(rng, 1, 3), rand_int(rng, 1, 3), rand_int(rng, 1, 2));
    const InputDocument doc = input_from_multifilt(pair.x);
    // Canonical filtration containment f(X_s) <= Y_s at every level.
    const auto witness = induced_hn_morphism(
        fp_host, pair.y.ops(), pair.x, pair.y,
        [&](const SubspaceFp& v) { return subspace_image(pair.f, v); });
    if (!witness.holds) record(rep, "canonical filtration containment fails", doc);
    // Factorization: the image of X lands in Y_s for s = mu_min(X).
    const auto dx = hn_sequence(fp_host, pair.x);
    const auto dy = hn_sequence(fp_host, pair.y);
    if (!dx.is_zero() && !dy.is_zero()) {
      const auto fy = hn_filtration(dy);
      const SubspaceFp image_all = subspace_image(pair.f, SubspaceFp::full(p, pair.x.dim));
      const SubspaceFp& target = eval(pair.y.ops(), fy, mu_min(dx));
      if (!subspace_contains(target, image_all)) record(rep, "factorization through Y_s fails", doc);
    }
    // Compatible isomorphism: coarsen a structure along the identity and
    // compare degrees and slopes.
    {
      Rng iso_rng(cfg.seed * 131 + uint64_t(t));
      const MultiFiltSpace y = small_random_multifilt(iso_rng);
      MultiFiltSpace x = y;
      const auto ops = x.ops();
      for (auto& f : x.filtrations) f = pointwise_meet(ops, f, random_flag(iso_rng, y.p, y.dim));
      if (!map_compatible(FpMat::identity(y.p, y.dim), x, y))
        record(rep, "identity not compatible after coarsening", input_from_multifilt(x));
      const auto cmp = compare_iso_degrees(fp_host, x, y);
      if (!cmp.all_ok()) record(rep, "iso degree comparison fails", input_from_multifilt(x));
    }
    // Transport: polygon of the hooked canonical filtration matches, with
    // a change-of-basis functor as the hook; identity is idempotence.
    {
      Rng hook_rng(cfg.seed * 151 + uint64_t(t));
      const MultiFiltSpace x = small_random_multifilt(hook_rng);
      const FpMat g = random_invertible_fp(hook_rng, x.p, x.dim);
      const auto ops = x.ops();
      if (!polygon_transport_check(fp_host, ops, x, [&](const SubspaceFp& v) { return v; }))
        record(rep, "idempotence transport fails", input_from_multifilt(x));
      if (!polygon_transport_check(fp_host, ops, x,
                                   [&](const SubspaceFp& v) { return subspace_image(g, v); }))
        record(rep, "change-of-basis transport fails", input_from_multifilt(x));
    }
    // Lattice functoriality on metric-compatible identity maps.
    {
      Rng lat_rng(cfg.seed * 181 + uint64_t(t));
      const EuclideanLattice y = random_lattice(lat_rng, rand_int(lat_rng, 1, 3), 2, 2);
      EuclideanLattice x = y;
      // Scale the metric up: identity then has norm <= 1 from x to y.
      const Rat c = Rat(rand_int(lat_rng, 1, 3));
      for (auto& v : x.gram.a) v *= (1 + c);
      const ZMat id = ZMat::identity(y.rank);
      if (!is_compatible(id, x, y))
        record(rep, "scaled identity not norm-compatible", input_from_lattice(x));
      const auto witness2 = induced_hn_morphism(
          lat_host, LatticeSubOps{&y}, x, y, [&](const Sublattice& v) { return v; });
      if (!witness2.holds) record(rep, "lattice filtration containment fails", input_from_lattice(x));
    }
  }
  return rep;
}

SuiteReport run_oracle_suite(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.name = "oracle";
  Rng rng(cfg.seed);
  MultiFiltHost fp_host;
  fp_host.cfg = cfg.fp_cfg;

  for (int t = 0; t < cfg.trials; ++t) {
    rep.trials++;
    const int p = rand_int(rng, 0, 1) ? 2 : 3;
    const int dim = rand_int(rng, 1, 3);
    const int n = rand_int(rng, 1, 3);
    const MultiFiltSpace x = random_multifilt(rng, p, dim, n);
    const InputDocument doc = input_from_multifilt(x);
    try {
      const SubspaceFp a = destabilizer_bruteforce(x, cfg.fp_cfg);
      const SubspaceFp b = destabilizer_closure(x, cfg.fp_cfg);
      if (!(a == b)) record(rep, "closure != brute force destabilizer", doc);
    } catch (const tie_error& e) {
      record(rep, std::string("tie: ") + e.what(), doc);
    } catch (const budget_error&) {
      // Skipped: budget exceeded is not a mismatch.
    }
    // Sequence recomputed from the canonical filtration.
    const auto d = hn_sequence(fp_host, x);
    const auto filt = hn_filtration(d);
    const auto jumps = minimal_jumping_set(x.ops(), filt);
    if (jumps.size() != d.slopes.size()) {
      record(rep, "jumping set size != chain length", doc);
    } else {
      for (size_t i = 0; i < jumps.size(); ++i) {
        if (jumps[i].compare(d.slopes[i]) != 0) record(rep, "jumping set != slopes", doc);
        const SubspaceFp& v = eval(x.ops(), filt, jumps[i]);
        if (!(v == d.chain[i + 1])) record(rep, "filtration value != chain member", doc);
      }
    }
    // Single-flag model identity.
    {
      Rng one_rng(cfg.seed * 47 + uint64_t(t));
      MultiFiltSpace m = random_multifilt(one_rng, p, rand_int(one_rng, 1, 4), 1);
      m.alpha[0] = 1;
      const auto dm = hn_sequence(fp_host, m);
      const auto fm = to_rational_filtration(hn_filtration(dm));
      if (!same_filtration(m.ops(), fm, m.filtrations[0]))
        record(rep, "single-flag canonical filtration differs from the flag",
               input_from_multifilt(m));
    }
  }
  // Lattice family diag(q, 1/q): the analytic destabilizer is the
  // shorter coordinate axis.
  for (int k = 2; k <= 6; ++k) {
    rep.trials++;
    EuclideanLattice l{2, QMat(2, 2)};
    l.gram.at(0, 0) = Rat(1, k);
    l.gram.at(1, 1) = Rat(k);
    const auto res = destabilizer_enum(l, cfg.lattice_cfg);
    ZMat expect(2, 1);
    expect.at(0, 0) = 1;
    if (!(res.sub.basis == hnf_columns(expect)))
      record(rep, "diag(1/k, k) destabilizer is not the short axis", input_from_lattice(l));
  }
  return rep;
}

std::vector<SuiteReport> run_all_suites(const SuiteConfig& cfg) {
  return {run_axioms_suite(cfg), run_slopes_suite(cfg), run_functoriality_suite(cfg),
          run_oracle_suite(cfg)};
}

}  // namespace hn
