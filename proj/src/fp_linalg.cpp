#include "hn/fp_linalg.hpp"

#include <algorithm>

namespace hn {

FpMat FpMat::identity(int p, int n) {
  FpMat m(p, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FpMat FpMat::transpose() const {
  FpMat t(p, cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

FpMat FpMat::operator*(const FpMat& o) const {
  if (p != o.p || cols != o.rows) throw fp_error("FpMat multiply: shape/prime mismatch");
  FpMat r(p, rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const int x = at(i, k);
      if (!x) continue;
      for (int j = 0; j < o.cols; ++j) r.at(i, j) = uint8_t((r.at(i, j) + x * o.at(k, j)) % p);
    }
  return r;
}

FpMat FpMat::vstack(const FpMat& top, const FpMat& bottom) {
  if (top.p != bottom.p || top.cols != bottom.cols) throw fp_error("vstack: shape/prime mismatch");
  FpMat m(top.p, top.rows + bottom.rows, top.cols);
  std::copy(top.a.begin(), top.a.end(), m.a.begin());
  std::copy(bottom.a.begin(), bottom.a.end(), m.a.begin() + top.a.size());
  return m;
}

int fp_inverse(int x, int p) {
  x %= p;
  if (x < 0) x += p;
  if (x == 0) throw fp_error("inverse of zero");
  int r = 1;
  for (int e = p - 2; e > 0; e >>= 1) {  // Fermat; p prime and tiny
    if (e & 1) r = r * x % p;
    x = x * x % p;
  }
  return r;
}

std::vector<int> rref_in_place(FpMat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int sel = -1;
    for (int i = row; i < m.rows; ++i)
      if (m.at(i, col)) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(row, j));
    const int inv = fp_inverse(m.at(row, col), m.p);
    for (int j = 0; j < m.cols; ++j) m.at(row, j) = uint8_t(m.at(row, j) * inv % m.p);
    for (int i = 0; i < m.rows; ++i) {
      if (i == row || !m.at(i, col)) continue;
      const int c = m.at(i, col);
      for (int j = 0; j < m.cols; ++j)
        m.at(i, j) = uint8_t(((m.at(i, j) - c * m.at(row, j)) % m.p + m.p) % m.p);
    }
    pivots.push_back(col);
    ++row;
  }
  m.a.resize(size_t(row) * m.cols);
  m.rows = row;
  return pivots;
}

FpMat kernel_left(const FpMat& m) {
  // Solve x * m = 0 via RREF of m^T acting on the right: equivalently the
  // classical free-variable construction on m^T.
  FpMat t = m.transpose();  // cols(t) = rows(m)
  const std::vector<int> pivots = rref_in_place(t);
  const int n = m.rows;
  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[c] = true;
  FpMat out(m.p, 0, n);
  std::vector<uint8_t> rowbuf(n, 0);
  for (int j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    std::fill(rowbuf.begin(), rowbuf.end(), 0);
    rowbuf[j] = 1;
    for (int i = 0; i < t.rows; ++i) {
      // pivot column pivots[i]: value = -t(i, j)
      rowbuf[pivots[i]] = uint8_t(((-int(t.at(i, j))) % m.p + m.p) % m.p);
    }
    out.rows += 1;
    out.a.insert(out.a.end(), rowbuf.begin(), rowbuf.end());
  }
  rref_in_place(out);
  return out;
}

int rank_of(FpMat m) {
  rref_in_place(m);
  return m.rows;
}

SubspaceFp SubspaceFp::from_rows(FpMat rows) {
  SubspaceFp s;
  s.p = rows.p;
  s.dim = rows.cols;
  rref_in_place(rows);
  s.basis = std::move(rows);
  return s;
}

SubspaceFp SubspaceFp::full(int p, int dim) {
  SubspaceFp s(p, dim);
  s.basis = FpMat::identity(p, dim);
  return s;
}

std::vector<int> SubspaceFp::pivots() const {
  std::vector<int> out;
  for (int i = 0; i < basis.rows; ++i)
    for (int j = 0; j < basis.cols; ++j)
      if (basis.at(i, j)) {
        out.push_back(j);
        break;
      }
  return out;
}

bool subspace_member(const SubspaceFp& u, const std::vector<uint8_t>& v) {
  std::vector<int> w(v.begin(), v.end());
  const int p = u.p;
  for (int i = 0; i < u.basis.rows; ++i) {
    int piv = -1;
    for (int j = 0; j < u.dim; ++j)
      if (u.basis.at(i, j)) {
        piv = j;
        break;
      }
    const int c = w[piv] % p;
    if (c)
      for (int j = 0; j < u.dim; ++j) w[j] = ((w[j] - c * u.basis.at(i, j)) % p + p) % p;
  }
  return std::all_of(w.begin(), w.end(), [](int x) { return x == 0; });
}

bool subspace_contains(const SubspaceFp& big, const SubspaceFp& small) {
  if (big.p != small.p || big.dim != small.dim) throw fp_error("subspace compare: mismatch");
  if (small.rank() > big.rank()) return false;
  for (int i = 0; i < small.basis.rows; ++i) {
    std::vector<uint8_t> row(small.dim);
    for (int j = 0; j < small.dim; ++j) row[j] = small.basis.at(i, j);
    if (!subspace_member(big, row)) return false;
  }
  return true;
}

SubspaceFp subspace_sum(const SubspaceFp& u, const SubspaceFp& v) {
  if (u.p != v.p || u.dim != v.dim) throw fp_error("subspace sum: mismatch");
  return SubspaceFp::from_rows(FpMat::vstack(u.basis, v.basis));
}

SubspaceFp subspace_intersect(const SubspaceFp& u, const SubspaceFp& v) {
  if (u.p != v.p || u.dim != v.dim) throw fp_error("subspace intersect: mismatch");
  // Coefficient vectors (s, t) with (s, t) * stacked = 0 give s*U = -t*V,
  // and those products span the intersection.
  FpMat stacked = FpMat::vstack(u.basis, v.basis);  // (ru+rv) x dim
  FpMat ker = kernel_left(stacked);
  FpMat rows(u.p, ker.rows, u.dim);
  for (int i = 0; i < ker.rows; ++i) {
    std::vector<int> acc(u.dim, 0);
    for (int k = 0; k < u.basis.rows; ++k) {
      const int c = ker.at(i, k);
      if (!c) continue;
      for (int j = 0; j < u.dim; ++j) acc[j] = (acc[j] + c * u.basis.at(k, j)) % u.p;
    }
    for (int j = 0; j < u.dim; ++j) rows.at(i, j) = uint8_t(acc[j]);
  }
  return SubspaceFp::from_rows(std::move(rows));
}

SubspaceFp subspace_image(const FpMat& m, const SubspaceFp& u) {
  if (m.p != u.p || m.rows != u.dim) throw fp_error("image: mismatch");
  return SubspaceFp::from_rows(u.basis * m);
}

SubspaceFp subspace_preimage(const FpMat& m, const SubspaceFp& w) {
  if (m.p != w.p || m.cols != w.dim) throw fp_error("preimage: mismatch");
  // x*m in span(w)  <=>  x * (m * C) = 0 where the columns of C span the
  // annihilator {c : w * c = 0}.
  FpMat cker = kernel_left(w.basis.transpose());  // rows span {c^T : w*c = 0}
  FpMat c = cker.transpose();                     // dim(w.dim) x k
  FpMat prod = m * c;
  FpMat ker = kernel_left(prod);
  SubspaceFp s;
  s.p = m.p;
  s.dim = m.rows;
  s.basis = std::move(ker);
  return s;
}

FpMat coordinates_in(const SubspaceFp& big, const SubspaceFp& small) {
  if (!subspace_contains(big, small)) throw fp_error("coordinates_in: not contained");
  // big.basis is RREF, so coordinates are just the entries at its pivots.
  const std::vector<int> piv = big.pivots();
  FpMat coords(big.p, small.basis.rows, big.basis.rows);
  for (int i = 0; i < small.basis.rows; ++i)
    for (size_t k = 0; k < piv.size(); ++k) coords.at(i, int(k)) = small.basis.at(i, piv[k]);
  return coords;
}

Int count_subspaces(int p, int d) {
  // Gaussian binomial [d k]_p summed over k.
  Int total = 0;
  for (int k = 0; k <= d; ++k) {
    Rat g(1);
    for (int i = 0; i < k; ++i) {
      g *= Rat(pow_int(Int(p), d - i) - 1, pow_int(Int(p), k - i) - 1);
    }
    g.canonicalize();
    total += g.get_num();  // always integral
  }
  return total;
}

namespace detail {

void for_each_combination(int n, int k, const std::function<bool(const std::vector<int>&)>& fn) {
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  if (k == 0) {
    fn(c);
    return;
  }
  while (true) {
    if (!fn(c)) return;
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

}  // namespace detail

}  // namespace hn
