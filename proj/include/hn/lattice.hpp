#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hn/errors.hpp"
#include "hn/value.hpp"
#include "hn/zq_linalg.hpp"

namespace hn {

// A Euclidean lattice: free Z-module of the given rank with an exact
// rational positive-definite Gram form in a fixed basis.
struct EuclideanLattice {
  int rank = 0;
  QMat gram;  // rank x rank, symmetric, positive definite
};

void validate(const EuclideanLattice& l);

// Integer-basis sublattice in ambient coordinates (columns), with the
// canonical-HNF basis and a saturation flag.
struct Sublattice {
  ZMat basis;  // rank x s, full column rank, canonical HNF
  bool saturated = false;

  int rank() const { return basis.cols; }
  bool is_zero() const { return basis.cols == 0; }
  bool operator==(const Sublattice& o) const { return basis == o.basis; }
};

// Canonicalizes a generating matrix (full column rank required).
Sublattice sublattice_from_columns(const EuclideanLattice& l, const ZMat& cols);

bool sublattice_is_saturated(const Sublattice& s, int ambient_rank);

// Arakelov degree of the sublattice spanned by a full-column-rank basis:
// -1/2 * log det(S^T G S). Throws on rank-deficient input.
ExactDegree arakelov_degree(const EuclideanLattice& l, const Sublattice& s);

// Degree of the saturation computed from a possibly non-saturated basis:
// the torsion index m divides into the determinant as det / m^2.
ExactDegree arakelov_degree_of_saturation(const EuclideanLattice& l, const Sublattice& s);

struct SaturationResult {
  Sublattice sat;
  Int index;  // [saturation : input]
};
SaturationResult saturate(const EuclideanLattice& l, const Sublattice& s);

// Quotient lattice L / S for saturated S: complete S to a basis, write
// the Gram in block form and take the rational Schur complement (the
// quotient metric). Returns the quotient together with the integer
// projection and a section (proj * sect = identity).
struct LatticeQuotient {
  EuclideanLattice space;
  ZMat projection;  // (r - s) x r
  ZMat section;     // r x (r - s)
};
LatticeQuotient quotient_lattice(const EuclideanLattice& l, const Sublattice& s);

// Norm <= 1 criterion: an integer matrix phi: X -> Y is compatible with
// the metrics iff G_X - phi^T G_Y phi is positive semidefinite (exact).
bool is_compatible(const ZMat& phi, const EuclideanLattice& lx, const EuclideanLattice& ly);

enum class Certification { proved, heuristic };

struct LatticeDestabConfig {
  long coeff_bound = 3;          // coefficient box half-width for vector enumeration
  int rank_guard = 5;            // refuse larger ambient ranks
  size_t pool_cap = 20000;       // primitive vectors kept
  size_t candidates_cap = 200000;  // saturation work budget across all levels
  size_t level_beam = 512;       // candidates kept per rank level (deterministic order)
};

struct LatticeDestabResult {
  Sublattice sub;
  Certification cert = Certification::heuristic;
};

// Bounded enumeration destabilizer: primitive vectors in the coefficient
// box seed saturated sublattices of every rank (incremental extension);
// maximum exact slope, then maximum rank. Certified "proved" when the
// box covers the Minkowski bound r * det(G)^(1/r) for shortest vectors,
// rounded outward in rational arithmetic.
LatticeDestabResult destabilizer_enum(const EuclideanLattice& l, const LatticeDestabConfig& cfg = {});

// Exact comparison of -log(d1)/(2 r1) vs -log(d2)/(2 r2) via the
// cross-exponent test; returns -1/0/+1.
int exact_slope_compare(const Rat& d1, int r1, const Rat& d2, int r2);

// All non-zero integer vectors with x^T G x <= cap and coefficients in
// [-box, box], sign-normalized (first non-zero coordinate positive),
// enumerated by exact norm-pruned recursion and sorted by (norm, lex).
std::vector<std::pair<Rat, std::vector<long>>> short_vectors(const QMat& gram, const Rat& cap,
                                                             long box);

// Subobject lattice operations (admissible subobjects are the saturated
// sublattices; join saturates the sum).
struct LatticeSubOps {
  using Sub = Sublattice;
  const EuclideanLattice* l = nullptr;

  int rank(const Sub& s) const { return s.rank(); }
  bool equal(const Sub& a, const Sub& b) const { return a == b; }
  bool contains(const Sub& a, const Sub& b) const;
  Sub meet(const Sub& a, const Sub& b) const;
  Sub join(const Sub& a, const Sub& b) const;
  Sub zero() const { return Sublattice{ZMat(l->rank, 0), true}; }
  Sub full() const;
};

// HnHost realization over Euclidean lattices. Destabilizer certification
// is aggregated across calls so a caller can report the weakest level
// seen during a run.
struct LatticeHost {
  using Obj = EuclideanLattice;
  using Sub = Sublattice;
  using Morph = ZMat;

  LatticeDestabConfig cfg;
  mutable Certification worst_cert = Certification::proved;

  int rank(const Obj& x) const { return x.rank; }
  bool is_zero_obj(const Obj& x) const { return x.rank == 0; }
  Scale scale() const { return Scale::log_rational; }

  ExactDegree degree_sub(const Obj& x, const Sub& s) const { return arakelov_degree(x, s); }
  int sub_rank(const Obj&, const Sub& s) const { return s.rank(); }
  bool sub_is_zero(const Obj&, const Sub& s) const { return s.is_zero(); }
  bool sub_equal(const Obj&, const Sub& a, const Sub& b) const { return a == b; }
  bool sub_contains(const Obj& x, const Sub& a, const Sub& b) const {
    return LatticeSubOps{&x}.contains(a, b);
  }
  Sub zero_sub(const Obj& x) const { return Sublattice{ZMat(x.rank, 0), true}; }
  Sub full_sub(const Obj& x) const { return Sublattice{ZMat::identity(x.rank), true}; }

  Sub destabilizer(const Obj& x) const;

  std::pair<Obj, Morph> quotient(const Obj& x, const Sub& s) const {
    auto q = quotient_lattice(x, s);
    return {std::move(q.space), std::move(q.projection)};
  }
  Morph identity_morph(const Obj& x) const { return ZMat::identity(x.rank); }
  Morph compose(const Morph& later, const Morph& earlier) const { return later * earlier; }
  Sub preimage(const Obj& x, const Morph& m, const Sub& of_target) const;
  Obj sub_object(const Obj& x, const Sub& s) const {
    return EuclideanLattice{s.rank(), gram_restrict(x.gram, s.basis)};
  }
  Sub restrict_sub(const Obj& x, const Sub& big, const Sub& small) const;
};

}  // namespace hn
