#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace grady {

// Square matrices over Z/2^m, m <= 62, entries stored reduced.
struct ModMat {
  int n = 0;
  std::uint64_t mod = 2;
  std::vector<std::uint64_t> a;  // row-major

  ModMat() = default;
  ModMat(int n_, std::uint64_t mod_) : n(n_), mod(mod_), a(std::size_t(n_) * n_, 0) {}

  std::uint64_t& at(int i, int j) { return a[std::size_t(i) * n + j]; }
  std::uint64_t at(int i, int j) const { return a[std::size_t(i) * n + j]; }

  static ModMat identity(int n, std::uint64_t mod) {
    ModMat m(n, mod);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  friend ModMat operator*(const ModMat& x, const ModMat& y) {
    ModMat z(x.n, x.mod);
    for (int i = 0; i < x.n; ++i)
      for (int k = 0; k < x.n; ++k) {
        std::uint64_t f = x.at(i, k);
        if (!f) continue;
        for (int j = 0; j < x.n; ++j)
          z.at(i, j) = (z.at(i, j) + f * y.at(k, j)) % x.mod;
      }
    return z;
  }
  friend ModMat operator+(const ModMat& x, const ModMat& y) {
    ModMat z(x.n, x.mod);
    for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = (x.a[i] + y.a[i]) % x.mod;
    return z;
  }
  friend ModMat operator-(const ModMat& x, const ModMat& y) {
    ModMat z(x.n, x.mod);
    for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = (x.a[i] + x.mod - y.a[i]) % x.mod;
    return z;
  }
  friend bool operator==(const ModMat& x, const ModMat& y) {
    return x.n == y.n && x.mod == y.mod && x.a == y.a;
  }

  ModMat transpose() const {
    ModMat t(n, mod);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t.at(j, i) = at(i, j);
    return t;
  }
};

// Standard symplectic adjoint a* = J^{-1} a^T J for J = [[0,I],[-I,0]].
inline ModMat symplectic_adjoint(const ModMat& m) {
  int h = m.n / 2;
  ModMat t = m.transpose();
  // J^{-1} X J with block decomposition [[A,B],[C,D]] -> [[D, -B],[-C, A]]
  ModMat out(m.n, m.mod);
  auto neg = [&](std::uint64_t v) { return (m.mod - v % m.mod) % m.mod; };
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j) {
      out.at(i, j) = t.at(h + i, h + j);
      out.at(i, h + j) = neg(t.at(h + i, j));
      out.at(h + i, j) = neg(t.at(i, h + j));
      out.at(h + i, h + j) = t.at(i, j);
    }
  return out;
}

inline bool is_symplectic(const ModMat& m) {
  return symplectic_adjoint(m) * m == ModMat::identity(m.n, m.mod);
}

// Lift of a symplectic matrix mod 2 to one mod 2^m, congruent to the input
// mod 2. Each correction step doubles the 2-adic precision: the defect
// a*a - 1 lies in the symmetrized-trace module of the current level, and
// multiplying by 1 - x for a half-decomposition x of the defect pushes it
// to the next level.
inline ModMat lift_symplectic(const std::vector<std::vector<int>>& abar_mod2, int m) {
  int n = static_cast<int>(abar_mod2.size());
  if (n % 2 != 0) throw std::invalid_argument("symplectic lift needs even size");
  if (m < 1 || m > 62) throw std::invalid_argument("modulus exponent out of range");
  std::uint64_t mod = std::uint64_t(1) << m;
  ModMat a(n, mod);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a.at(i, j) = abar_mod2[i][j] & 1;
  {
    ModMat a2(n, 2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a2.at(i, j) = abar_mod2[i][j] & 1;
    if (!is_symplectic(a2))
      throw std::invalid_argument("input matrix is not symplectic mod 2");
  }
  int h = n / 2;
  ModMat one = ModMat::identity(n, mod);
  for (int iter = 0; !(symplectic_adjoint(a) * a == one); ++iter) {
    if (iter > 64) throw std::logic_error("symplectic lift did not converge");
    ModMat c = symplectic_adjoint(a) * a;
    ModMat bdef = c - one;  // in Symd: [[p, r],[s, p^T]] with r,s alternating
    for (int i = 0; i < h; ++i)
      if (bdef.at(i, h + i) != 0 || bdef.at(h + i, i) != 0)
        throw std::logic_error("defect left the symmetrized-trace module");
    // pick x with x + x* = bdef: x = [[p, upper(r)],[upper(s), 0]]
    ModMat x(n, mod);
    for (int i = 0; i < h; ++i)
      for (int j = 0; j < h; ++j) {
        x.at(i, j) = bdef.at(i, j);
        if (j > i) {
          x.at(i, h + j) = bdef.at(i, h + j);
          x.at(h + i, j) = bdef.at(h + i, j);
        }
      }
    a = a * (one - x);
  }
  return a;
}

}  // namespace grady
