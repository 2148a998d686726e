#pragma once

#include <random>

#include "hn/multifilt.hpp"

namespace hn {

struct EuclideanLattice;

using Rng = std::mt19937_64;

int rand_int(Rng& rng, int lo, int hi);  // inclusive bounds
Rat rand_rat(Rng& rng, int num_lo, int num_hi, int den_hi);

FpMat random_fp_matrix(Rng& rng, int p, int rows, int cols);
FpMat random_invertible_fp(Rng& rng, int p, int n);
SubspaceFp random_subspace(Rng& rng, int p, int dim);
SubspaceFp random_subspace_between(Rng& rng, const SubspaceFp& lo, const SubspaceFp& hi);

// Separated exhaustive left-oriented flag with strictly decreasing
// rational weights.
FpFiltration random_flag(Rng& rng, int p, int dim);

MultiFiltSpace random_multifilt(Rng& rng, int p, int dim, int n_filtrations);

// A map f: X -> Y together with filtrations making it compatible: Y's
// structure is free, X's flags are pullbacks of Y's meet a random
// separated flag.
struct CompatiblePairFp {
  MultiFiltSpace x;
  MultiFiltSpace y;
  FpMat f;
};
CompatiblePairFp random_compatible_pair(Rng& rng, int p, int dx, int dy, int n_filtrations);

// Random integral symmetric positive-definite Gram scaled by a random
// positive rational.
EuclideanLattice random_lattice(Rng& rng, int rank, int entry_bound, int den_hi);

}  // namespace hn
