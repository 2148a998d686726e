#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hn/errors.hpp"
#include "hn/filtration.hpp"
#include "hn/fp_linalg.hpp"
#include "hn/value.hpp"

namespace hn {

using FpFiltration = StepFiltration<SubspaceFp, Rat>;

// An F_p vector space carrying n weighted flags: each filtration is
// separated, exhaustive, left-oriented and of finite length; the degree
// of a subspace is the alpha-weighted sum of the per-flag degrees.
struct MultiFiltSpace {
  int p = 2;
  int dim = 0;
  std::vector<Rat> alpha;                  // non-negative weights, one per filtration
  std::vector<FpFiltration> filtrations;   // on the full space

  FpSubspaceOps ops() const { return FpSubspaceOps{p, dim}; }
  bool is_zero() const { return dim == 0; }
};

// Validates invariants (weights non-negative, filtrations separated,
// exhaustive, left-oriented, canonical containment chains). Throws.
void validate(const MultiFiltSpace& x);

ExactDegree degree(const MultiFiltSpace& x, const SubspaceFp& u);
ExactDegree degree(const MultiFiltSpace& x);
ExactSlope subspace_slope(const MultiFiltSpace& x, const SubspaceFp& u);

struct DestabConfig {
  Int enum_ceiling = Int(1000000);  // max subspace count for brute force
  size_t closure_cap = 65536;       // max closure lattice size
};

// Brute-force destabilizer: enumerates every subspace. Throws
// budget_error when the subspace count exceeds the ceiling and tie_error
// when two distinct subspaces tie on (slope, rank) at the top.
SubspaceFp destabilizer_bruteforce(const MultiFiltSpace& x, const DestabConfig& cfg = {});

// Closure-search destabilizer: best candidate inside the finite lattice
// generated by all filtration steps under sum/intersection. Exact for a
// single flag; a verified heuristic for several (cross-checked against
// brute force by the oracle suites).
SubspaceFp destabilizer_closure(const MultiFiltSpace& x, const DestabConfig& cfg = {});

// The sum/intersection closure itself (deduplicated, deterministic order).
std::vector<SubspaceFp> filtration_step_closure(const MultiFiltSpace& x, size_t cap);

// Quotient space X/U with quotient filtrations, plus the projection
// matrix (row convention: v |-> v * proj) and a section with
// section * projection = identity on the quotient.
struct FpQuotient {
  MultiFiltSpace space;
  FpMat projection;  // dim x (dim - rank U)
  FpMat section;     // (dim - rank U) x dim
};
FpQuotient quotient_structure(const MultiFiltSpace& x, const SubspaceFp& u);

// Induced structure on a subspace, rebased to the subspace's own
// coordinates (basis rows of u).
MultiFiltSpace induced_structure(const MultiFiltSpace& x, const SubspaceFp& u);

// A linear map between multi-filtered spaces is compatible with the
// arithmetic structures iff every flag is carried into the corresponding
// flag pointwise. Both routes (witness per filtration, direct pointwise
// containment at joint jumping sets) coincide; the implementation uses
// the witness machinery.
bool map_compatible(const FpMat& f, const MultiFiltSpace& x, const MultiFiltSpace& y);

// HnHost realization driving the generic engine over this category.
struct MultiFiltHost {
  using Obj = MultiFiltSpace;
  using Sub = SubspaceFp;
  using Morph = FpMat;

  DestabConfig cfg;

  int rank(const Obj& x) const { return x.dim; }
  bool is_zero_obj(const Obj& x) const { return x.dim == 0; }
  Scale scale() const { return Scale::rational; }

  ExactDegree degree_full(const Obj& x) const { return hn::degree(x); }
  ExactDegree degree_sub(const Obj& x, const Sub& u) const { return hn::degree(x, u); }
  int sub_rank(const Obj&, const Sub& u) const { return u.rank(); }
  bool sub_is_zero(const Obj&, const Sub& u) const { return u.is_zero(); }
  bool sub_equal(const Obj&, const Sub& a, const Sub& b) const { return a == b; }
  bool sub_contains(const Obj&, const Sub& a, const Sub& b) const { return subspace_contains(a, b); }
  Sub zero_sub(const Obj& x) const { return SubspaceFp::zero(x.p, x.dim); }
  Sub full_sub(const Obj& x) const { return SubspaceFp::full(x.p, x.dim); }

  Sub destabilizer(const Obj& x) const;

  std::pair<Obj, Morph> quotient(const Obj& x, const Sub& u) const {
    auto q = quotient_structure(x, u);
    return {std::move(q.space), std::move(q.projection)};
  }
  Morph identity_morph(const Obj& x) const { return FpMat::identity(x.p, x.dim); }
  Morph compose(const Morph& later, const Morph& earlier) const { return earlier * later; }
  Sub preimage(const Obj& x, const Morph& m, const Sub& of_target) const {
    (void)x;
    return subspace_preimage(m, of_target);
  }
  Obj sub_object(const Obj& x, const Sub& u) const { return induced_structure(x, u); }
  Sub restrict_sub(const Obj& x, const Sub& big, const Sub& small) const {
    (void)x;
    return SubspaceFp::from_rows(coordinates_in(big, small));
  }
};

// Randomized verification of the arithmetic-structure axioms A2..A7 on
// this instantiation. Deterministic given the seed; failures carry a
// human-readable counterexample tag.
struct AxiomReport {
  int trials = 0;
  int failures = 0;
  std::vector<std::string> counterexamples;
  bool passed() const { return failures == 0; }
};
AxiomReport axiom_suite(int p, int d, int n_filtrations, int trials, uint64_t seed);

}  // namespace hn
