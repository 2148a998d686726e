#include "hn/lattice.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace hn {

void validate(const EuclideanLattice& l) {
  if (l.gram.rows != l.rank || l.gram.cols != l.rank)
    throw linalg_error("lattice: Gram shape mismatch");
  if (l.rank > 0 && !is_positive_definite(l.gram))
    throw linalg_error("lattice: Gram not positive definite");
}

Sublattice sublattice_from_columns(const EuclideanLattice& l, const ZMat& cols) {
  if (cols.rows != l.rank) throw linalg_error("sublattice: ambient rank mismatch");
  ZMat h = hnf_columns(cols);
  if (h.cols != cols.cols) throw linalg_error("sublattice: rank-deficient generating set");
  Sublattice s{std::move(h), false};
  s.saturated = sublattice_is_saturated(s, l.rank);
  return s;
}

bool sublattice_is_saturated(const Sublattice& s, int ambient_rank) {
  if (s.is_zero() || s.rank() == ambient_rank) return true;
  const ZMat ker = integer_kernel(s.basis.transpose());  // functionals vanishing on s
  const ZMat sat = integer_kernel(ker.transpose());
  return sat == s.basis;
}

ExactDegree arakelov_degree(const EuclideanLattice& l, const Sublattice& s) {
  const QMat g = gram_restrict(l.gram, s.basis);
  const Rat d = det(g);
  if (d <= 0) throw linalg_error("arakelov_degree: rank-deficient sublattice basis");
  return ExactDegree::log_rational(d);
}

SaturationResult saturate(const EuclideanLattice& l, const Sublattice& s) {
  if (s.basis.rows != l.rank) throw linalg_error("saturate: ambient rank mismatch");
  SaturationResult out;
  if (s.is_zero()) {
    out.sat = s;
    out.sat.saturated = true;
    out.index = 1;
    return out;
  }
  const ZMat ker = integer_kernel(s.basis.transpose());
  ZMat sat = integer_kernel(ker.transpose());
  // Index = |det C| where sat * C = s.basis.
  const auto c = solve(to_q(sat), to_q(s.basis));
  if (!c) throw linalg_error("saturate: inconsistent solve");
  Rat idx = det(*c);
  if (idx < 0) idx = -idx;
  if (idx.get_den() != 1) throw linalg_error("saturate: non-integral index");
  out.sat = Sublattice{std::move(sat), true};
  out.index = idx.get_num();
  return out;
}

ExactDegree arakelov_degree_of_saturation(const EuclideanLattice& l, const Sublattice& s) {
  const auto r = saturate(l, s);
  const QMat g = gram_restrict(l.gram, s.basis);
  const Rat d = det(g);
  if (d <= 0) throw linalg_error("arakelov_degree: rank-deficient sublattice basis");
  return ExactDegree::log_rational(d / Rat(r.index * r.index));
}

LatticeQuotient quotient_lattice(const EuclideanLattice& l, const Sublattice& s) {
  if (!s.saturated && !sublattice_is_saturated(s, l.rank))
    throw linalg_error("quotient_lattice: sublattice not saturated");
  const int r = l.rank;
  const int k = s.rank();
  const ZMat t = complete_basis(s.basis);
  const QMat tinv = inverse(to_q(t));
  LatticeQuotient out;
  out.projection = ZMat(r - k, r);
  for (int i = 0; i < r - k; ++i)
    for (int j = 0; j < r; ++j) {
      const Rat& v = tinv.at(k + i, j);
      if (v.get_den() != 1) throw linalg_error("quotient_lattice: non-integral projection");
      out.projection.at(i, j) = v.get_num();
    }
  out.section = ZMat(r, r - k);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r - k; ++j) out.section.at(i, j) = t.at(i, k + j);
  // Gram in the completed basis, then the Schur complement of the
  // sublattice block: the quotient metric.
  const QMat gt = gram_restrict(l.gram, t);
  QMat a(k, k), b(k, r - k), d(r - k, r - k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) a.at(i, j) = gt.at(i, j);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < r - k; ++j) b.at(i, j) = gt.at(i, k + j);
  for (int i = 0; i < r - k; ++i)
    for (int j = 0; j < r - k; ++j) d.at(i, j) = gt.at(k + i, k + j);
  QMat schur = d;
  if (k > 0) schur = d - (b.transpose() * inverse(a) * b);
  out.space = EuclideanLattice{r - k, std::move(schur)};
  validate(out.space);
  return out;
}

bool is_compatible(const ZMat& phi, const EuclideanLattice& lx, const EuclideanLattice& ly) {
  if (phi.rows != ly.rank || phi.cols != lx.rank)
    throw linalg_error("is_compatible: shape mismatch");
  const QMat p = to_q(phi);
  return is_positive_semidefinite(lx.gram - (p.transpose() * ly.gram * p));
}

int exact_slope_compare(const Rat& d1, int r1, const Rat& d2, int r2) {
  if (d1 <= 0 || d2 <= 0) throw value_error("exact_slope_compare: non-positive determinant");
  if (r1 < 1 || r2 < 1) throw value_error("exact_slope_compare: non-positive rank");
  return ExactSlope::log_scaled(d1, r1).compare(ExactSlope::log_scaled(d2, r2));
}

// ---------------------------------------------------------------------------
// Destabilizer enumeration

namespace {

Rat norm_of(const QMat& g, const std::vector<long>& x) {
  const int r = int(x.size());
  Rat total(0);
  for (int i = 0; i < r; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < r; ++j) {
      if (x[j] == 0) continue;
      total += g.at(i, j) * Rat(long(x[i]) * x[j]);
    }
  }
  return total;
}

bool primitive_normalized(const std::vector<long>& x) {
  long g = 0;
  int first_nz = -1;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0 && first_nz < 0) first_nz = int(i);
    g = std::gcd(g, std::abs(x[i]));
  }
  if (first_nz < 0) return false;       // zero vector
  if (x[first_nz] < 0) return false;    // sign-normalized representative only
  return g == 1;
}

// Smallest integer n >= r * det(G)^(1/r) (outward rounding).
Int minkowski_norm_bound(const Rat& detg, int r) {
  // n^r >= r^r * det  <=>  n^r * den >= r^r * num.
  const Int rhs_num = pow_int(Int(r), r) * detg.get_num();
  const Int den = detg.get_den();
  // Initial guess via integer root of ceil(rhs_num / den).
  Int t = (rhs_num + den - 1) / den;
  Int n;
  mpz_root(n.get_mpz_t(), t.get_mpz_t(), r);
  while (pow_int(n, r) * den < rhs_num) ++n;
  return n;
}

// Exact LDL^T of a positive-definite rational form: g = l d l^T with l
// unit lower triangular.
struct Ldl {
  QMat l;
  std::vector<Rat> d;
};

Ldl ldl_decompose(const QMat& g) {
  const int r = g.rows;
  Ldl out{QMat::identity(r), std::vector<Rat>(r)};
  for (int i = 0; i < r; ++i) {
    Rat di = g.at(i, i);
    for (int k = 0; k < i; ++k) di -= out.l.at(i, k) * out.l.at(i, k) * out.d[k];
    out.d[i] = di;
    if (di <= 0) throw linalg_error("ldl: form not positive definite");
    for (int j = i + 1; j < r; ++j) {
      Rat v = g.at(j, i);
      for (int k = 0; k < i; ++k) v -= out.l.at(j, k) * out.l.at(i, k) * out.d[k];
      out.l.at(j, i) = v / di;
    }
  }
  return out;
}

// Norm-pruned enumeration of all integer vectors with x^T g x <= cap and
// coefficients in [-box, box], coordinates chosen from the last one down
// so the partial diagonal sums prune: with z = l^T x, the norm is
// sum d_i z_i^2 and z_i depends only on x_i and later coordinates.
template <typename Fn>
void enumerate_in_ball(const Ldl& f, const Rat& cap, long box, Fn&& emit) {
  const int r = int(f.d.size());
  std::vector<long> x(r, 0);
  std::vector<Rat> used(r + 1, Rat(0));  // used[i]: norm from coordinates >= i
  std::function<void(int)> descend = [&](int i) {
    if (i < 0) {
      emit(x);
      return;
    }
    const Rat rem = cap - used[i + 1];
    if (rem < 0) return;
    // z_i = x_i + sum_{j>i} l(j, i) x_j =: x_i - center.
    Rat center(0);
    for (int j = i + 1; j < r; ++j)
      if (x[j] != 0) center -= f.l.at(j, i) * Rat(x[j]);
    // |x_i - center| <= sqrt(rem / d_i); outward integer bounds.
    const Int radius = sqrt_ceil(rem / f.d[i]);
    Rat lo_q = center - Rat(radius), hi_q = center + Rat(radius);
    Int lo, hi;
    mpz_cdiv_q(lo.get_mpz_t(), lo_q.get_num().get_mpz_t(), lo_q.get_den().get_mpz_t());
    mpz_fdiv_q(hi.get_mpz_t(), hi_q.get_num().get_mpz_t(), hi_q.get_den().get_mpz_t());
    if (lo < -box) lo = -box;
    if (hi > box) hi = box;
    for (Int v = lo; v <= hi; ++v) {
      x[i] = v.get_si();
      const Rat z = Rat(x[i]) - center;
      const Rat add = f.d[i] * z * z;
      if (used[i + 1] + add > cap) continue;  // exact final check per branch
      used[i] = used[i + 1] + add;
      descend(i - 1);
    }
    x[i] = 0;
  };
  descend(r - 1);
}

}  // namespace

std::vector<std::pair<Rat, std::vector<long>>> short_vectors(const QMat& gram, const Rat& cap,
                                                             long box) {
  std::vector<std::pair<Rat, std::vector<long>>> out;
  const Ldl fact = ldl_decompose(gram);
  enumerate_in_ball(fact, cap, box, [&](const std::vector<long>& x) {
    bool zero = true, flip = false;
    for (long v : x) {
      if (v != 0) {
        flip = v < 0;
        zero = false;
        break;
      }
    }
    if (zero) return;
    std::vector<long> y = x;
    if (flip)
      for (auto& v : y) v = -v;
    out.emplace_back(norm_of(gram, y), std::move(y));
  });
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    const int c = cmp(a.first, b.first);
    if (c != 0) return c < 0;
    return a.second < b.second;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

LatticeDestabResult destabilizer_enum(const EuclideanLattice& l, const LatticeDestabConfig& cfg) {
  const int r = l.rank;
  if (r == 0) throw oracle_error("destabilizer of the zero lattice");
  if (r > cfg.rank_guard) throw budget_error("lattice rank over guard");

  LatticeDestabResult out;
  if (r == 1) {
    out.sub = Sublattice{ZMat::identity(1), true};
    out.cert = Certification::proved;
    return out;
  }

  // Certification: the coefficient box covers every vector within the
  // Minkowski bound iff ceil(sqrt(N * (G^{-1})_{ii})) <= B for all i
  // (|x_i|^2 <= (e_i^T G^{-1} e_i)(x^T G x) by Cauchy-Schwarz in G).
  const Int nbound = minkowski_norm_bound(det(l.gram), r);
  const QMat ginv = inverse(l.gram);
  bool covered = true;
  for (int i = 0; i < r; ++i)
    if (sqrt_ceil(Rat(nbound) * ginv.at(i, i)) > cfg.coeff_bound) covered = false;
  out.cert = covered ? Certification::proved : Certification::heuristic;

  // Pool of sign-normalized primitive vectors: norm-pruned enumeration
  // inside the Minkowski ball, clipped to the coefficient box. If the
  // box and ball miss each other the cap escalates until something is
  // found (the result is then heuristic anyway).
  const Ldl fact = ldl_decompose(l.gram);
  std::vector<std::pair<Rat, std::vector<long>>> pool;
  Rat cap(nbound);
  for (int attempt = 0; attempt < 16 && pool.empty(); ++attempt, cap *= 4) {
    enumerate_in_ball(fact, cap, cfg.coeff_bound, [&](const std::vector<long>& x) {
      if (!primitive_normalized(x)) return;
      pool.emplace_back(norm_of(l.gram, x), x);
      if (pool.size() > cfg.pool_cap) throw budget_error("vector pool over cap");
    });
  }
  if (pool.empty()) throw budget_error("no primitive vector within the escalated cap");
  std::sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) {
    const int c = cmp(a.first, b.first);
    if (c != 0) return c < 0;
    return a.second < b.second;
  });

  // Saturated candidates, rank by rank: extend by pool vectors.
  ExactSlope best_slope = ExactSlope::negative_infinity();
  int best_rank = 0;
  std::optional<Sublattice> best;
  bool tie = false;
  auto consider = [&](const Sublattice& s) {
    const ExactDegree deg = arakelov_degree(l, s);
    const ExactSlope mu = ExactSlope::from_degree(deg, Int(s.rank()));
    const int c = best ? mu.compare(best_slope) : 1;
    if (c > 0 || (c == 0 && s.rank() > best_rank)) {
      best = s;
      best_slope = mu;
      best_rank = s.rank();
      tie = false;
    } else if (c == 0 && s.rank() == best_rank && !(s == *best)) {
      tie = true;
    }
  };

  // Rank-1 candidates scan the whole pool (slope is maximized by the
  // shortest vector). Higher ranks extend by vectors within the Minkowski
  // bound only, each unordered vector set once (seed-index ordering);
  // completeness beyond rank 1 rests on the certification policy, not on
  // this pruning.
  std::vector<ZMat> short_cols;
  const Rat nb(nbound);
  for (const auto& [norm, vec] : pool) {
    if (!(norm <= nb)) continue;
    ZMat col(r, 1);
    for (int i = 0; i < r; ++i) col.at(i, 0) = vec[i];
    short_cols.push_back(std::move(col));
  }

  struct LevelEntry {
    Sublattice sub;
    size_t next_seed;  // extend only by pool indices >= this
  };
  std::vector<LevelEntry> level;
  size_t work = 0;
  for (const auto& [norm, vec] : pool) {
    ZMat col(r, 1);
    for (int i = 0; i < r; ++i) col.at(i, 0) = vec[i];
    Sublattice s{hnf_columns(col), true};  // primitive => saturated
    consider(s);
  }
  for (size_t k = 0; k < short_cols.size(); ++k)
    level.push_back({Sublattice{hnf_columns(short_cols[k]), true}, k + 1});

  for (int s_rank = 2; s_rank < r; ++s_rank) {
    std::vector<LevelEntry> next;
    std::set<std::vector<Int>> seen;
    for (const auto& entry : level) {
      for (size_t k = entry.next_seed; k < short_cols.size(); ++k) {
        const ZMat joined = ZMat::hcat(entry.sub.basis, short_cols[k]);
        if (rank_of(to_q(joined)) != s_rank) continue;
        if (++work > cfg.candidates_cap) throw budget_error("candidate work over cap");
        Sublattice grown = saturate(l, Sublattice{hnf_columns(joined), false}).sat;
        if (!seen.insert(grown.basis.a).second) continue;
        consider(grown);
        next.push_back({std::move(grown), k + 1});
      }
    }
    // Deterministic beam: keep the best slopes (then the canonical key).
    if (next.size() > cfg.level_beam) {
      std::sort(next.begin(), next.end(), [&](const LevelEntry& a, const LevelEntry& b) {
        const ExactSlope sa = ExactSlope::from_degree(arakelov_degree(l, a.sub), Int(a.sub.rank()));
        const ExactSlope sb = ExactSlope::from_degree(arakelov_degree(l, b.sub), Int(b.sub.rank()));
        const int c = sa.compare(sb);
        if (c != 0) return c > 0;
        return a.sub.basis.a < b.sub.basis.a;
      });
      next.resize(cfg.level_beam);
    }
    level = std::move(next);
  }
  consider(Sublattice{ZMat::identity(r), true});

  if (tie) throw tie_error("distinct sublattices tie on (slope, rank) at the top");
  out.sub = *best;
  return out;
}

// ---------------------------------------------------------------------------
// Subobject operations and the engine host

bool LatticeSubOps::contains(const Sub& a, const Sub& b) const {
  if (b.is_zero()) return true;
  if (a.is_zero()) return b.is_zero();
  const auto c = solve(to_q(a.basis), to_q(b.basis));
  if (!c) return false;
  for (const Rat& v : c->a)
    if (v.get_den() != 1) return false;
  return true;
}

Sublattice LatticeSubOps::meet(const Sub& a, const Sub& b) const {
  // x = A s = B t: kernel of [A | -B] gives the coefficient pairs.
  ZMat neg = b.basis;
  for (auto& v : neg.a) v = -v;
  const ZMat ker = integer_kernel(ZMat::hcat(a.basis, neg));
  ZMat coeff_a(a.basis.cols, ker.cols);
  for (int i = 0; i < a.basis.cols; ++i)
    for (int j = 0; j < ker.cols; ++j) coeff_a.at(i, j) = ker.at(i, j);
  ZMat vecs = a.basis * coeff_a;
  Sublattice out{hnf_columns(vecs), false};
  out.saturated = sublattice_is_saturated(out, l->rank);
  return out;
}

Sublattice LatticeSubOps::join(const Sub& a, const Sub& b) const {
  const ZMat sum = hnf_columns(ZMat::hcat(a.basis, b.basis));
  return saturate(*l, Sublattice{sum, false}).sat;
}

Sublattice LatticeSubOps::full() const {
  return Sublattice{ZMat::identity(l->rank), true};
}

Sublattice LatticeHost::destabilizer(const Obj& x) const {
  const auto res = destabilizer_enum(x, cfg);
  if (res.cert == Certification::heuristic) worst_cert = Certification::heuristic;
  return res.sub;
}

Sublattice LatticeHost::preimage(const Obj& x, const Morph& m, const Sub& of_target) const {
  // {v in Z^r : m v in span(of_target)}: since targets are saturated it
  // is the integer kernel of the span annihilator composed with m.
  (void)x;
  const ZMat ann = integer_kernel(of_target.basis.transpose());  // functionals
  const ZMat comp = ann.transpose() * m;
  ZMat ker = integer_kernel(comp);
  return Sublattice{std::move(ker), true};
}

Sublattice LatticeHost::restrict_sub(const Obj&, const Sub& big, const Sub& small) const {
  const auto c = solve(to_q(big.basis), to_q(small.basis));
  if (!c) throw linalg_error("restrict_sub: not contained");
  ZMat coords(big.rank(), small.rank());
  for (int i = 0; i < coords.rows; ++i)
    for (int j = 0; j < coords.cols; ++j) {
      const Rat& v = c->at(i, j);
      if (v.get_den() != 1) throw linalg_error("restrict_sub: non-integral coordinates");
      coords.at(i, j) = v.get_num();
    }
  Sublattice out{hnf_columns(coords), false};
  out.saturated = sublattice_is_saturated(out, big.rank());
  return out;
}

}  // namespace hn
