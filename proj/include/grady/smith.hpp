#pragma once

#include <cstdint>
#include <cstdlib>
#include <vector>

#include "grady/rational.hpp"

namespace grady {

using IntMat = std::vector<std::vector<std::int64_t>>;

inline IntMat int_identity(int n) {
  IntMat m(n, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMat int_mul(const IntMat& a, const IntMat& b) {
  int r = static_cast<int>(a.size());
  int inner = r ? static_cast<int>(a[0].size()) : 0;
  int c = inner && !b.empty() ? static_cast<int>(b[0].size()) : 0;
  IntMat out(r, std::vector<std::int64_t>(c, 0));
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (int j = 0; j < c; ++j)
        out[i][j] = checked_add(out[i][j], checked_mul(a[i][k], b[k][j]));
    }
  return out;
}

// Smith normal form: returns (D, U, V) with U*A*V = D diagonal, U and V
// unimodular, and the diagonal entries forming a divisibility chain.
struct SmithResult {
  IntMat d;
  IntMat u;  // rows x rows
  IntMat v;  // cols x cols
  std::vector<std::int64_t> invariant_factors;  // nonzero diagonal entries
};

inline SmithResult smith(const IntMat& a) {
  int r = static_cast<int>(a.size());
  int c = r ? static_cast<int>(a[0].size()) : 0;
  SmithResult res;
  res.d = a;
  res.u = int_identity(r);
  res.v = int_identity(c);
  IntMat& d = res.d;
  IntMat& u = res.u;
  IntMat& v = res.v;

  auto swap_rows = [&](int i, int j) {
    std::swap(d[i], d[j]);
    std::swap(u[i], u[j]);
  };
  auto swap_cols = [&](int i, int j) {
    for (auto& row : d) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
  };
  auto addmul_row = [&](int dst, int src, std::int64_t f) {  // row dst += f*row src
    for (int j = 0; j < c; ++j) d[dst][j] = checked_add(d[dst][j], checked_mul(f, d[src][j]));
    for (int j = 0; j < r; ++j) u[dst][j] = checked_add(u[dst][j], checked_mul(f, u[src][j]));
  };
  auto addmul_col = [&](int dst, int src, std::int64_t f) {
    for (int i = 0; i < r; ++i) d[i][dst] = checked_add(d[i][dst], checked_mul(f, d[i][src]));
    for (int i = 0; i < c; ++i) v[i][dst] = checked_add(v[i][dst], checked_mul(f, v[i][src]));
  };
  auto negate_row = [&](int i) {
    for (auto& x : d[i]) x = checked_sub(0, x);
    for (auto& x : u[i]) x = checked_sub(0, x);
  };

  int t = 0;
  int lim = std::min(r, c);
  while (t < lim) {
    // locate a nonzero pivot of least absolute value in the trailing block
    int pi = -1, pj = -1;
    std::int64_t best = 0;
    for (int i = t; i < r; ++i)
      for (int j = t; j < c; ++j)
        if (d[i][j] != 0 && (pi < 0 || std::abs(d[i][j]) < best)) {
          best = std::abs(d[i][j]);
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < r; ++i) {
        if (d[i][t] == 0) continue;
        std::int64_t q = d[i][t] / d[t][t];
        addmul_row(i, t, -q);
        if (d[i][t] != 0) {  // remainder smaller than pivot: promote it
          swap_rows(t, i);
          clean = false;
        }
      }
      for (int j = t + 1; j < c; ++j) {
        if (d[t][j] == 0) continue;
        std::int64_t q = d[t][j] / d[t][t];
        addmul_col(j, t, -q);
        if (d[t][j] != 0) {
          swap_cols(t, j);
          clean = false;
        }
      }
    }
    // pivot must divide every entry of the remaining block
    bool divides_all = true;
    for (int i = t + 1; i < r && divides_all; ++i)
      for (int j = t + 1; j < c && divides_all; ++j)
        if (d[i][j] % d[t][t] != 0) {
          addmul_row(t, i, 1);
          divides_all = false;
        }
    if (!divides_all) continue;  // redo this pivot
    if (d[t][t] < 0) negate_row(t);
    ++t;
  }
  for (int i = 0; i < lim; ++i)
    if (d[i][i] != 0) res.invariant_factors.push_back(d[i][i]);
  return res;
}

}  // namespace grady
