#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace grady {

// Vectors over GF(2) are bitmasks; matrices are arrays of row masks.
using gf2vec = std::uint32_t;

struct GF2Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<gf2vec> row;  // row[i] bit j = entry (i,j)

  GF2Matrix() = default;
  GF2Matrix(int r, int c) : rows(r), cols(c), row(r, 0) {}

  static GF2Matrix identity(int n) {
    GF2Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.row[i] = gf2vec(1) << i;
    return m;
  }

  int get(int i, int j) const { return (row[i] >> j) & 1; }
  void set(int i, int j, int v) {
    if (v) row[i] |= gf2vec(1) << j;
    else row[i] &= ~(gf2vec(1) << j);
  }

  // Image of a (column) vector: y_i = <row_i, x>.
  gf2vec apply(gf2vec x) const {
    gf2vec y = 0;
    for (int i = 0; i < rows; ++i)
      y |= gf2vec(__builtin_parity(row[i] & x)) << i;
    return y;
  }

  friend GF2Matrix operator*(const GF2Matrix& a, const GF2Matrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("gf2 matrix size mismatch");
    GF2Matrix c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
      for (int k = 0; k < a.cols; ++k)
        if ((a.row[i] >> k) & 1) c.row[i] ^= b.row[k];
    return c;
  }

  GF2Matrix transpose() const {
    GF2Matrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (get(i, j)) t.set(j, i, 1);
    return t;
  }

  friend bool operator==(const GF2Matrix& a, const GF2Matrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.row == b.row;
  }
};

inline int gf2_rank(std::vector<gf2vec> rows) {
  int rank = 0;
  for (int bit = 0; bit < 32; ++bit) {
    int pivot = -1;
    for (int i = rank; i < static_cast<int>(rows.size()); ++i)
      if ((rows[i] >> bit) & 1) { pivot = i; break; }
    if (pivot < 0) continue;
    std::swap(rows[pivot], rows[rank]);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
      if (i != rank && ((rows[i] >> bit) & 1)) rows[i] ^= rows[rank];
    ++rank;
  }
  return rank;
}

inline bool gf2_invertible(const GF2Matrix& m) {
  return m.rows == m.cols && gf2_rank(m.row) == m.rows;
}

inline GF2Matrix gf2_inverse(const GF2Matrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("not square");
  int n = m.rows;
  std::vector<std::uint64_t> aug(n);
  for (int i = 0; i < n; ++i)
    aug[i] = std::uint64_t(m.row[i]) | (std::uint64_t(1) << (n + i));
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int i = col; i < n; ++i)
      if ((aug[i] >> col) & 1) { pivot = i; break; }
    if (pivot < 0) throw std::domain_error("gf2 matrix not invertible");
    std::swap(aug[pivot], aug[col]);
    for (int i = 0; i < n; ++i)
      if (i != col && ((aug[i] >> col) & 1)) aug[i] ^= aug[col];
  }
  GF2Matrix inv(n, n);
  for (int i = 0; i < n; ++i) inv.row[i] = gf2vec(aug[i] >> n);
  return inv;
}

// Row space basis in reduced echelon form (canonical for subspace equality).
inline std::vector<gf2vec> gf2_rowspace_basis(const std::vector<gf2vec>& rows) {
  std::vector<gf2vec> piv(32, 0);  // piv[b] has lowest set bit b
  for (gf2vec v : rows) {
    for (int b = 0; b < 32 && v; ++b) {
      if (!((v >> b) & 1)) continue;
      if (piv[b]) v ^= piv[b];
      else { piv[b] = v; v = 0; }
    }
  }
  for (int b = 0; b < 32; ++b)
    if (piv[b])
      for (int c = b + 1; c < 32; ++c)
        if (piv[c] && ((piv[b] >> c) & 1)) piv[b] ^= piv[c];
  std::vector<gf2vec> basis;
  for (int b = 0; b < 32; ++b)
    if (piv[b]) basis.push_back(piv[b]);
  return basis;
}

inline bool gf2_in_span(const std::vector<gf2vec>& echelon_basis, gf2vec v) {
  for (gf2vec b : echelon_basis) {
    gf2vec lead = b & -b;
    if (v & lead) v ^= b;
  }
  return v == 0;
}

}  // namespace grady
