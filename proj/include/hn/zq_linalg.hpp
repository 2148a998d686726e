#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "hn/rational.hpp"

namespace hn {

struct linalg_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense integer matrix; lattice vectors are columns and morphisms act by
// left multiplication.
struct ZMat {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a;

  ZMat() = default;
  ZMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c, Int(0)) {}

  Int& at(int i, int j) { return a[size_t(i) * cols + j]; }
  const Int& at(int i, int j) const { return a[size_t(i) * cols + j]; }

  static ZMat identity(int n);
  ZMat transpose() const;
  ZMat operator*(const ZMat& o) const;
  bool operator==(const ZMat& o) const = default;
  static ZMat hcat(const ZMat& left, const ZMat& right);
};

struct QMat {
  int rows = 0;
  int cols = 0;
  std::vector<Rat> a;

  QMat() = default;
  QMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c, Rat(0)) {}

  Rat& at(int i, int j) { return a[size_t(i) * cols + j]; }
  const Rat& at(int i, int j) const { return a[size_t(i) * cols + j]; }

  static QMat identity(int n);
  QMat transpose() const;
  QMat operator*(const QMat& o) const;
  QMat operator-(const QMat& o) const;
  bool operator==(const QMat& o) const = default;
};

QMat to_q(const ZMat& m);

Rat det(QMat m);           // exact Gaussian elimination
QMat inverse(QMat m);      // throws linalg_error on singular input
int rank_of(QMat m);
bool is_symmetric(const QMat& m);
// All leading principal minors positive (exact).
bool is_positive_definite(const QMat& m);
// Recursive rational Schur complements with zero-pivot handling.
bool is_positive_semidefinite(QMat m);

// Solves m * x = b exactly; nullopt when inconsistent.
std::optional<QMat> solve(const QMat& m, const QMat& b);

// Canonical column-style Hermite normal form of the column lattice
// (pivot rows strictly increasing, positive pivots, entries left of a
// pivot reduced into [0, pivot)). Zero columns are dropped, so the
// result has full column rank and is a canonical key for the lattice.
ZMat hnf_columns(const ZMat& m);

// Basis of {x in Z^cols : m * x = 0}; the kernel lattice is saturated.
ZMat integer_kernel(const ZMat& m);

// Unimodular completion [s | c] of a saturated full-column-rank s.
// Throws when s is not saturated.
ZMat complete_basis(const ZMat& s);

// Gram of the sublattice spanned by the columns of s: s^T g s.
QMat gram_restrict(const QMat& g, const ZMat& s);

}  // namespace hn
