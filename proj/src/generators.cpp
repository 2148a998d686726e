#include "hn/generators.hpp"

#include "hn/lattice.hpp"

namespace hn {

int rand_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Rat rand_rat(Rng& rng, int num_lo, int num_hi, int den_hi) {
  Rat q(rand_int(rng, num_lo, num_hi), rand_int(rng, 1, den_hi));
  q.canonicalize();
  return q;
}

FpMat random_fp_matrix(Rng& rng, int p, int rows, int cols) {
  FpMat m(p, rows, cols);
  for (auto& v : m.a) v = uint8_t(rand_int(rng, 0, p - 1));
  return m;
}

FpMat random_invertible_fp(Rng& rng, int p, int n) {
  while (true) {
    FpMat m = random_fp_matrix(rng, p, n, n);
    if (rank_of(m) == n) return m;
  }
}

SubspaceFp random_subspace(Rng& rng, int p, int dim) {
  const int gens = rand_int(rng, 0, dim);
  return SubspaceFp::from_rows(random_fp_matrix(rng, p, gens, dim));
}

SubspaceFp random_subspace_between(Rng& rng, const SubspaceFp& lo, const SubspaceFp& hi) {
  SubspaceFp s = lo;
  const int room = hi.rank() - lo.rank();
  const int extra = room > 0 ? rand_int(rng, 0, room) : 0;
  for (int k = 0; k < extra; ++k) {
    // A random vector of hi.
    FpMat coeff = random_fp_matrix(rng, hi.p, 1, hi.rank());
    FpMat vec = coeff * hi.basis;
    s = subspace_sum(s, SubspaceFp::from_rows(vec));
  }
  return s;
}

FpFiltration random_flag(Rng& rng, int p, int dim) {
  const SubspaceFp full = SubspaceFp::full(p, dim);
  std::vector<SubspaceFp> chain;  // strictly increasing, ends at full
  SubspaceFp cur = SubspaceFp::zero(p, dim);
  while (cur.rank() < dim) {
    SubspaceFp next = random_subspace_between(rng, cur, full);
    if (next.rank() == cur.rank()) {
      // Force growth by one random vector outside cur.
      while (next.rank() == cur.rank()) {
        FpMat vec = random_fp_matrix(rng, p, 1, dim);
        next = subspace_sum(cur, SubspaceFp::from_rows(vec));
      }
    }
    chain.push_back(next);
    cur = next;
  }
  // Strictly decreasing weights, from a random base with positive steps.
  const int n = int(chain.size());
  std::vector<Rat> weights(n);
  Rat w = rand_rat(rng, -4, 4, 3);
  for (int i = n - 1; i >= 0; --i) {
    weights[i] = w;
    w += rand_rat(rng, 1, 4, 3);  // positive step upward
  }
  FpFiltration f;
  f.orientation = Orientation::left_continuous;
  f.breakpoints = std::move(weights);
  f.values.push_back(SubspaceFp::zero(p, dim));
  for (auto& c : chain) f.values.push_back(std::move(c));
  return f;
}

MultiFiltSpace random_multifilt(Rng& rng, int p, int dim, int n_filtrations) {
  MultiFiltSpace x;
  x.p = p;
  x.dim = dim;
  for (int k = 0; k < n_filtrations; ++k) {
    x.filtrations.push_back(random_flag(rng, p, dim));
    Rat a(rand_int(rng, 0, 3), rand_int(rng, 1, 2));
    a.canonicalize();
    if (a == 0 && n_filtrations == 1) a = 1;  // keep single-flag objects honest
    x.alpha.push_back(a);
  }
  return x;
}

CompatiblePairFp random_compatible_pair(Rng& rng, int p, int dx, int dy, int n_filtrations) {
  CompatiblePairFp out;
  out.y = random_multifilt(rng, p, dy, n_filtrations);
  out.f = random_fp_matrix(rng, p, dx, dy);
  out.x.p = p;
  out.x.dim = dx;
  out.x.alpha = out.y.alpha;
  const FpSubspaceOps xops{p, dx};
  for (int k = 0; k < n_filtrations; ++k) {
    const FpFiltration pulled = pullback(xops, out.y.filtrations[k], [&](const SubspaceFp& v) {
      return subspace_preimage(out.f, v);
    });
    // Meet with a random separated flag so the result is separated even
    // when f has a kernel; compatibility survives the shrink.
    const FpFiltration sep = random_flag(rng, p, dx);
    out.x.filtrations.push_back(pointwise_meet(xops, pulled, sep));
  }
  return out;
}

EuclideanLattice random_lattice(Rng& rng, int rank, int entry_bound, int den_hi) {
  while (true) {
    // B^T B + diag(1..): integral PD, then a random positive rational scale.
    ZMat b(rank, rank);
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) b.at(i, j) = rand_int(rng, -entry_bound, entry_bound);
    ZMat g = b.transpose() * b;
    for (int i = 0; i < rank; ++i) g.at(i, i) += rand_int(rng, 1, 3);
    QMat q(rank, rank);
    const Rat scale = rand_rat(rng, 1, 4, den_hi);
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) q.at(i, j) = Rat(g.at(i, j)) * scale;
    EuclideanLattice lat{rank, q};
    if (is_positive_definite(q)) return lat;
  }
}

}  // namespace hn
