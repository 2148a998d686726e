#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hn/rational.hpp"

namespace hn {

struct fp_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense matrix over the prime field F_p, p a small prime. Vectors are
// rows; a linear map F_p^n -> F_p^m is an n x m matrix acting by
// x |-> x * M.
struct FpMat {
  int p = 2;
  int rows = 0;
  int cols = 0;
  std::vector<uint8_t> a;

  FpMat() = default;
  FpMat(int p_, int rows_, int cols_) : p(p_), rows(rows_), cols(cols_), a(size_t(rows_) * cols_, 0) {}

  uint8_t& at(int i, int j) { return a[size_t(i) * cols + j]; }
  uint8_t at(int i, int j) const { return a[size_t(i) * cols + j]; }

  static FpMat identity(int p, int n);
  static FpMat zero(int p, int r, int c) { return FpMat(p, r, c); }

  FpMat transpose() const;
  FpMat operator*(const FpMat& o) const;
  bool operator==(const FpMat& o) const = default;

  // Vertical stack; column counts must agree.
  static FpMat vstack(const FpMat& top, const FpMat& bottom);
};

int fp_inverse(int x, int p);

// Reduced row echelon form. Returns pivot column indices; zero rows are
// removed, so rows() afterwards equals the rank.
std::vector<int> rref_in_place(FpMat& m);

// Basis of {x row vector : x * m = 0}, in RREF.
FpMat kernel_left(const FpMat& m);

int rank_of(FpMat m);

// Subspace of F_p^dim in canonical reduced-row-echelon basis. Canonical
// form is unique per subspace, so equality is entry-wise.
struct SubspaceFp {
  int p = 2;
  int dim = 0;
  FpMat basis;  // rank many rows, RREF

  SubspaceFp() = default;
  SubspaceFp(int p_, int dim_) : p(p_), dim(dim_), basis(p_, 0, dim_) {}

  // Canonicalizes arbitrary spanning rows.
  static SubspaceFp from_rows(FpMat rows);
  static SubspaceFp zero(int p, int dim) { return SubspaceFp(p, dim); }
  static SubspaceFp full(int p, int dim);

  int rank() const { return basis.rows; }
  bool is_zero() const { return basis.rows == 0; }
  bool operator==(const SubspaceFp& o) const = default;
  std::vector<int> pivots() const;
};

bool subspace_contains(const SubspaceFp& big, const SubspaceFp& small);
SubspaceFp subspace_sum(const SubspaceFp& u, const SubspaceFp& v);
SubspaceFp subspace_intersect(const SubspaceFp& u, const SubspaceFp& v);

// Image and preimage of subspaces under x |-> x * m (m: src_dim x dst_dim).
SubspaceFp subspace_image(const FpMat& m, const SubspaceFp& u);
SubspaceFp subspace_preimage(const FpMat& m, const SubspaceFp& w);

// Membership of a single row vector.
bool subspace_member(const SubspaceFp& u, const std::vector<uint8_t>& v);

// Coordinates of the rows of `small` with respect to the RREF basis of
// `big`; requires containment.
FpMat coordinates_in(const SubspaceFp& big, const SubspaceFp& small);

// Number of subspaces of F_p^d (sum of Gaussian binomials).
Int count_subspaces(int p, int d);

// Enumerates every subspace of F_p^d in a deterministic order (by
// dimension, then pivot pattern, then free entries). The callback may
// return false to stop early.
template <typename Fn>
void enumerate_subspaces(int p, int d, Fn&& fn);

// SubobjectApi realization for the category of F_p vector spaces with a
// fixed ambient dimension.
struct FpSubspaceOps {
  using Sub = SubspaceFp;
  int p = 2;
  int dim = 0;

  int rank(const Sub& s) const { return s.rank(); }
  bool equal(const Sub& a, const Sub& b) const { return a == b; }
  bool contains(const Sub& a, const Sub& b) const { return subspace_contains(a, b); }
  Sub meet(const Sub& a, const Sub& b) const { return subspace_intersect(a, b); }
  Sub join(const Sub& a, const Sub& b) const { return subspace_sum(a, b); }
  Sub zero() const { return SubspaceFp::zero(p, dim); }
  Sub full() const { return SubspaceFp::full(p, dim); }
};

// --- template implementation -------------------------------------------

namespace detail {
void for_each_combination(int n, int k, const std::function<bool(const std::vector<int>&)>& fn);
}

template <typename Fn>
void enumerate_subspaces(int p, int d, Fn&& fn) {
  for (int k = 0; k <= d; ++k) {
    bool stop = false;
    detail::for_each_combination(d, k, [&](const std::vector<int>& pivots) {
      // Free entries: (i, j) with j > pivots[i] and j not a pivot.
      std::vector<std::pair<int, int>> free_pos;
      std::vector<bool> is_pivot(d, false);
      for (int c : pivots) is_pivot[c] = true;
      for (int i = 0; i < k; ++i)
        for (int j = pivots[i] + 1; j < d; ++j)
          if (!is_pivot[j]) free_pos.emplace_back(i, j);
      std::vector<uint8_t> digits(free_pos.size(), 0);
      while (true) {
        FpMat m(p, k, d);
        for (int i = 0; i < k; ++i) m.at(i, pivots[i]) = 1;
        for (size_t t = 0; t < free_pos.size(); ++t) m.at(free_pos[t].first, free_pos[t].second) = digits[t];
        SubspaceFp s;
        s.p = p;
        s.dim = d;
        s.basis = std::move(m);
        if (!fn(s)) {
          stop = true;
          return false;
        }
        // Increment the base-p counter over free entries.
        size_t t = 0;
        for (; t < digits.size(); ++t) {
          if (++digits[t] < p) break;
          digits[t] = 0;
        }
        if (t == digits.size()) break;
      }
      return true;
    });
    if (stop) return;
  }
}

}  // namespace hn
