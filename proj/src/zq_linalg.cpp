#include "hn/zq_linalg.hpp"

#include <algorithm>

namespace hn {

ZMat ZMat::identity(int n) {
  ZMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

ZMat ZMat::transpose() const {
  ZMat t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

ZMat ZMat::operator*(const ZMat& o) const {
  if (cols != o.rows) throw linalg_error("ZMat multiply: shape mismatch");
  ZMat r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const Int& x = at(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.cols; ++j) r.at(i, j) += x * o.at(k, j);
    }
  return r;
}

ZMat ZMat::hcat(const ZMat& left, const ZMat& right) {
  if (left.rows != right.rows) throw linalg_error("hcat: row mismatch");
  ZMat m(left.rows, left.cols + right.cols);
  for (int i = 0; i < left.rows; ++i) {
    for (int j = 0; j < left.cols; ++j) m.at(i, j) = left.at(i, j);
    for (int j = 0; j < right.cols; ++j) m.at(i, left.cols + j) = right.at(i, j);
  }
  return m;
}

QMat QMat::identity(int n) {
  QMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMat QMat::transpose() const {
  QMat t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

QMat QMat::operator*(const QMat& o) const {
  if (cols != o.rows) throw linalg_error("QMat multiply: shape mismatch");
  QMat r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const Rat& x = at(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.cols; ++j) r.at(i, j) += x * o.at(k, j);
    }
  return r;
}

QMat QMat::operator-(const QMat& o) const {
  if (rows != o.rows || cols != o.cols) throw linalg_error("QMat subtract: shape mismatch");
  QMat r(rows, cols);
  for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
  return r;
}

QMat to_q(const ZMat& m) {
  QMat q(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) q.a[i] = Rat(m.a[i]);
  return q;
}

Rat det(QMat m) {
  if (m.rows != m.cols) throw linalg_error("det: not square");
  Rat d(1);
  for (int c = 0; c < m.cols; ++c) {
    int sel = -1;
    for (int i = c; i < m.rows; ++i)
      if (m.at(i, c) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) return Rat(0);
    if (sel != c) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(c, j));
      d = -d;
    }
    d *= m.at(c, c);
    const Rat inv = 1 / m.at(c, c);
    for (int i = c + 1; i < m.rows; ++i) {
      if (m.at(i, c) == 0) continue;
      const Rat f = m.at(i, c) * inv;
      for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return d;
}

QMat inverse(QMat m) {
  if (m.rows != m.cols) throw linalg_error("inverse: not square");
  const int n = m.rows;
  QMat inv = QMat::identity(n);
  for (int c = 0; c < n; ++c) {
    int sel = -1;
    for (int i = c; i < n; ++i)
      if (m.at(i, c) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) throw linalg_error("inverse: singular matrix");
    if (sel != c)
      for (int j = 0; j < n; ++j) {
        std::swap(m.at(sel, j), m.at(c, j));
        std::swap(inv.at(sel, j), inv.at(c, j));
      }
    const Rat piv = m.at(c, c);
    for (int j = 0; j < n; ++j) {
      m.at(c, j) /= piv;
      inv.at(c, j) /= piv;
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || m.at(i, c) == 0) continue;
      const Rat f = m.at(i, c);
      for (int j = 0; j < n; ++j) {
        m.at(i, j) -= f * m.at(c, j);
        inv.at(i, j) -= f * inv.at(c, j);
      }
    }
  }
  return inv;
}

int rank_of(QMat m) {
  int rank = 0;
  for (int c = 0; c < m.cols && rank < m.rows; ++c) {
    int sel = -1;
    for (int i = rank; i < m.rows; ++i)
      if (m.at(i, c) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != rank)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(rank, j));
    const Rat inv = 1 / m.at(rank, c);
    for (int i = rank + 1; i < m.rows; ++i) {
      if (m.at(i, c) == 0) continue;
      const Rat f = m.at(i, c) * inv;
      for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(rank, j);
    }
    ++rank;
  }
  return rank;
}

bool is_symmetric(const QMat& m) {
  if (m.rows != m.cols) return false;
  for (int i = 0; i < m.rows; ++i)
    for (int j = i + 1; j < m.cols; ++j)
      if (m.at(i, j) != m.at(j, i)) return false;
  return true;
}

bool is_positive_definite(const QMat& m) {
  if (!is_symmetric(m)) return false;
  for (int k = 1; k <= m.rows; ++k) {
    QMat lead(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) lead.at(i, j) = m.at(i, j);
    if (det(lead) <= 0) return false;
  }
  return true;
}

bool is_positive_semidefinite(QMat m) {
  if (!is_symmetric(m)) return false;
  while (m.rows > 0) {
    int piv = -1;
    for (int i = 0; i < m.rows; ++i) {
      if (m.at(i, i) < 0) return false;
      if (piv < 0 && m.at(i, i) > 0) piv = i;
    }
    if (piv < 0) {
      // Zero diagonal: PSD forces the whole matrix to vanish.
      for (const Rat& v : m.a)
        if (v != 0) return false;
      return true;
    }
    // Schur complement removing the pivot row/column.
    QMat next(m.rows - 1, m.cols - 1);
    const Rat d = m.at(piv, piv);
    int ii = 0;
    for (int i = 0; i < m.rows; ++i) {
      if (i == piv) continue;
      int jj = 0;
      for (int j = 0; j < m.cols; ++j) {
        if (j == piv) continue;
        next.at(ii, jj) = m.at(i, j) - m.at(i, piv) * m.at(piv, j) / d;
        ++jj;
      }
      ++ii;
    }
    m = std::move(next);
  }
  return true;
}

std::optional<QMat> solve(const QMat& m, const QMat& b) {
  if (m.rows != b.rows) throw linalg_error("solve: shape mismatch");
  // Gaussian elimination on [m | b].
  QMat w(m.rows, m.cols + b.cols);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) w.at(i, j) = m.at(i, j);
    for (int j = 0; j < b.cols; ++j) w.at(i, m.cols + j) = b.at(i, j);
  }
  std::vector<int> pivot_col;
  int row = 0;
  for (int c = 0; c < m.cols && row < w.rows; ++c) {
    int sel = -1;
    for (int i = row; i < w.rows; ++i)
      if (w.at(i, c) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != row)
      for (int j = 0; j < w.cols; ++j) std::swap(w.at(sel, j), w.at(row, j));
    const Rat piv = w.at(row, c);
    for (int j = 0; j < w.cols; ++j) w.at(row, j) /= piv;
    for (int i = 0; i < w.rows; ++i) {
      if (i == row || w.at(i, c) == 0) continue;
      const Rat f = w.at(i, c);
      for (int j = 0; j < w.cols; ++j) w.at(i, j) -= f * w.at(row, j);
    }
    pivot_col.push_back(c);
    ++row;
  }
  // Consistency: no nonzero rhs entries below the pivot rows.
  for (int i = row; i < w.rows; ++i)
    for (int j = 0; j < b.cols; ++j)
      if (w.at(i, m.cols + j) != 0) return std::nullopt;
  QMat x(m.cols, b.cols);
  for (int r = 0; r < row; ++r)
    for (int j = 0; j < b.cols; ++j) x.at(pivot_col[r], j) = w.at(r, m.cols + j);
  return x;
}

namespace {

// Canonical row Hermite normal form: pivot columns strictly increasing,
// positive pivots, entries above a pivot reduced into [0, pivot).
ZMat hnf_rows(ZMat m) {
  int row = 0;
  for (int c = 0; c < m.cols && row < m.rows; ++c) {
    // Combine rows row..end to leave the column gcd at `row`.
    int nz = -1;
    for (int i = row; i < m.rows; ++i)
      if (m.at(i, c) != 0) {
        nz = i;
        break;
      }
    if (nz < 0) continue;
    if (nz != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(nz, j), m.at(row, j));
    for (int i = row + 1; i < m.rows; ++i) {
      while (m.at(i, c) != 0) {
        Int q = m.at(row, c) / m.at(i, c);  // truncated division is fine for the gcd loop
        for (int j = 0; j < m.cols; ++j) m.at(row, j) -= q * m.at(i, j);
        for (int j = 0; j < m.cols; ++j) std::swap(m.at(row, j), m.at(i, j));
      }
    }
    if (m.at(row, c) < 0)
      for (int j = 0; j < m.cols; ++j) m.at(row, j) = -m.at(row, j);
    for (int i = 0; i < row; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), m.at(i, c).get_mpz_t(), m.at(row, c).get_mpz_t());
      if (q != 0)
        for (int j = 0; j < m.cols; ++j) m.at(i, j) -= q * m.at(row, j);
    }
    ++row;
  }
  m.a.resize(size_t(row) * m.cols);
  m.rows = row;
  return m;
}

// Column echelon via unimodular column operations, tracking the
// transform: returns (e, u) with m * u = e; zero columns of e sit last
// and the matching columns of u span the kernel.
std::pair<ZMat, ZMat> column_echelon_with_transform(const ZMat& m_in) {
  ZMat m = m_in;
  ZMat u = ZMat::identity(m.cols);
  int col = 0;
  auto swap_cols = [&](ZMat& w, int a, int b) {
    for (int i = 0; i < w.rows; ++i) std::swap(w.at(i, a), w.at(i, b));
  };
  auto axpy_col = [&](ZMat& w, int dst, const Int& q, int src) {
    for (int i = 0; i < w.rows; ++i) w.at(i, dst) -= q * w.at(i, src);
  };
  for (int r = 0; r < m.rows && col < m.cols; ++r) {
    int nz = -1;
    for (int c = col; c < m.cols; ++c)
      if (m.at(r, c) != 0) {
        nz = c;
        break;
      }
    if (nz < 0) continue;
    if (nz != col) {
      swap_cols(m, nz, col);
      swap_cols(u, nz, col);
    }
    for (int c = col + 1; c < m.cols; ++c) {
      while (m.at(r, c) != 0) {
        Int q = m.at(r, col) / m.at(r, c);
        axpy_col(m, col, q, c);
        axpy_col(u, col, q, c);
        swap_cols(m, col, c);
        swap_cols(u, col, c);
      }
    }
    ++col;
  }
  return {std::move(m), std::move(u)};
}

}  // namespace

ZMat hnf_columns(const ZMat& m) {
  ZMat h = hnf_rows(m.transpose()).transpose();
  return h;
}

ZMat integer_kernel(const ZMat& m) {
  if (m.cols == 0) return ZMat(m.cols, 0);
  if (m.rows == 0) return ZMat::identity(m.cols);
  auto [e, u] = column_echelon_with_transform(m);
  int nonzero_cols = 0;
  for (int c = 0; c < e.cols; ++c) {
    bool nz = false;
    for (int i = 0; i < e.rows; ++i)
      if (e.at(i, c) != 0) {
        nz = true;
        break;
      }
    if (nz) ++nonzero_cols;
  }
  ZMat ker(m.cols, m.cols - nonzero_cols);
  for (int c = nonzero_cols; c < m.cols; ++c)
    for (int i = 0; i < m.cols; ++i) ker.at(i, c - nonzero_cols) = u.at(i, c);
  return hnf_columns(ker);
}

ZMat complete_basis(const ZMat& s) {
  const int r = s.rows;
  const int k = s.cols;
  if (k == 0) return ZMat::identity(r);
  // s^T * u = [l | 0] with u unimodular; w = (u^T)^{-1} has its first k
  // columns spanning the saturation of the column span of s.
  auto [e, u] = column_echelon_with_transform(s.transpose());
  // Saturation check: |det l| must be 1 for the first k columns block.
  ZMat l(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) l.at(i, j) = e.at(i, j);
  Rat dl = det(to_q(l));
  if (dl != 1 && dl != -1) throw linalg_error("complete_basis: input not saturated");
  const QMat winv = inverse(to_q(u.transpose()));
  ZMat out(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const Rat& v = winv.at(i, j);
      if (v.get_den() != 1) throw linalg_error("complete_basis: non-integral inverse");
      if (j < k)
        out.at(i, j) = s.at(i, j);
      else
        out.at(i, j) = v.get_num();
    }
  // Sanity: the completion must be unimodular.
  const Rat dt = det(to_q(out));
  if (dt != 1 && dt != -1) throw linalg_error("complete_basis: completion not unimodular");
  return out;
}

QMat gram_restrict(const QMat& g, const ZMat& s) {
  const QMat sq = to_q(s);
  return sq.transpose() * g * sq;
}

}  // namespace hn
