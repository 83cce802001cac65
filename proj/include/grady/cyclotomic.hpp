#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "grady/rational.hpp"

namespace grady {

// Integer polynomial division helpers used to build cyclotomic polynomials.
namespace detail {

// Divides a by monic b, both with int64 coefficients; remainder must be zero.
inline std::vector<std::int64_t> exact_div_monic(std::vector<std::int64_t> a,
                                                 const std::vector<std::int64_t>& b) {
  assert(!b.empty() && b.back() == 1);
  std::vector<std::int64_t> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  for (int i = static_cast<int>(a.size()) - 1; i >= static_cast<int>(b.size()) - 1; --i) {
    std::int64_t c = a[i];
    if (c == 0) continue;
    int shift = i - (static_cast<int>(b.size()) - 1);
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j)
      a[shift + j] = checked_sub(a[shift + j], checked_mul(c, b[j]));
  }
  for (std::int64_t c : a) assert(c == 0);
  return q;
}

inline std::vector<std::int64_t> cyclotomic_poly(int m) {
  // x^m - 1 divided by all lower-order cyclotomic factors.
  std::vector<std::int64_t> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    num = exact_div_monic(num, cyclotomic_poly(d));
  }
  while (num.size() > 1 && num.back() == 0) num.pop_back();
  return num;
}

}  // namespace detail

// The field Q(zeta_m): elements are rational coefficient vectors in the power
// basis 1, zeta, ..., zeta^{phi(m)-1} modulo the m-th cyclotomic polynomial.
class CycField {
 public:
  explicit CycField(int m) : m_(m) {
    if (m < 1) throw std::domain_error("cyclotomic order must be positive");
    auto phi_m = detail::cyclotomic_poly(m);
    deg_ = static_cast<int>(phi_m.size()) - 1;
    // Reduction table: x^k mod Phi_m for k in [deg, 2*deg-1], plus all powers
    // 0..m-1 for fast zeta^k lookup.
    power_.assign(std::max(m, 2 * deg_), std::vector<Rational>(deg_, Rational(0)));
    std::vector<Rational> cur(deg_, Rational(0));
    cur[0] = Rational(1);
    for (int k = 0; k < static_cast<int>(power_.size()); ++k) {
      power_[k] = cur;
      // multiply by x
      Rational top = cur[deg_ - 1];
      for (int i = deg_ - 1; i > 0; --i) cur[i] = cur[i - 1];
      cur[0] = Rational(0);
      if (!top.is_zero())
        for (int i = 0; i < deg_; ++i)
          cur[i] = cur[i] - top * Rational(phi_m[i]);
    }
  }

  int order() const { return m_; }
  int degree() const { return deg_; }
  const std::vector<Rational>& power(int k) const {
    k %= m_;
    if (k < 0) k += m_;
    return power_[k];
  }

 private:
  int m_;
  int deg_;
  std::vector<std::vector<Rational>> power_;
};

// Shared per-order field contexts; orders in use stay small.
inline const CycField& cyc_field(int m) {
  static std::map<int, std::unique_ptr<CycField>> cache;
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, std::make_unique<CycField>(m)).first;
  return *it->second;
}

// An element of Q(zeta_m).
class Cyc {
 public:
  Cyc() : field_(&cyc_field(1)), coef_(1, Rational(0)) {}
  explicit Cyc(const CycField& f) : field_(&f), coef_(f.degree(), Rational(0)) {}
  Cyc(const CycField& f, Rational c) : Cyc(f) { coef_[0] = c; }

  static Cyc zero(const CycField& f) { return Cyc(f); }
  static Cyc one(const CycField& f) { return Cyc(f, Rational(1)); }
  // zeta_m^k
  static Cyc root(const CycField& f, std::int64_t k) {
    Cyc r(f);
    r.coef_ = f.power(static_cast<int>(((k % f.order()) + f.order()) % f.order()));
    return r;
  }

  const CycField& field() const { return *field_; }
  const std::vector<Rational>& coef() const { return coef_; }

  bool is_zero() const {
    return std::all_of(coef_.begin(), coef_.end(), [](const Rational& c) { return c.is_zero(); });
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < coef_.size(); ++i)
      if (!coef_[i].is_zero()) return false;
    return true;
  }
  Rational rational_value() const {
    if (!is_rational()) throw std::domain_error("cyclotomic element is not rational");
    return coef_[0];
  }

  Cyc operator-() const {
    Cyc r = *this;
    for (auto& c : r.coef_) c = -c;
    return r;
  }

  friend Cyc operator+(const Cyc& a, const Cyc& b) {
    a.check_same(b);
    Cyc r = a;
    for (int i = 0; i < static_cast<int>(r.coef_.size()); ++i) r.coef_[i] += b.coef_[i];
    return r;
  }
  friend Cyc operator-(const Cyc& a, const Cyc& b) { return a + (-b); }
  friend Cyc operator*(const Cyc& a, const Cyc& b) {
    a.check_same(b);
    int d = a.field_->degree();
    std::vector<Rational> prod(2 * d - 1, Rational(0));
    for (int i = 0; i < d; ++i) {
      if (a.coef_[i].is_zero()) continue;
      for (int j = 0; j < d; ++j) {
        if (b.coef_[j].is_zero()) continue;
        prod[i + j] += a.coef_[i] * b.coef_[j];
      }
    }
    Cyc r(*a.field_);
    for (int k = 0; k < 2 * d - 1; ++k) {
      if (prod[k].is_zero()) continue;
      if (k < d) {
        r.coef_[k] += prod[k];
      } else {
        const auto& row = a.field_->power(k);
        for (int i = 0; i < d; ++i) r.coef_[i] += prod[k] * row[i];
      }
    }
    return r;
  }

  Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
  Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
  Cyc& operator*=(const Cyc& o) { return *this = *this * o; }

  friend bool operator==(const Cyc& a, const Cyc& b) {
    a.check_same(b);
    return a.coef_ == b.coef_;
  }
  friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

  // Complex conjugation zeta -> zeta^{-1}.
  Cyc conj() const {
    int m = field_->order();
    Cyc r(*field_);
    for (int k = 0; k < field_->degree(); ++k) {
      if (coef_[k].is_zero()) continue;
      const auto& row = field_->power(((m - k) % m + m) % m);
      for (int i = 0; i < field_->degree(); ++i) r.coef_[i] += coef_[k] * row[i];
    }
    return r;
  }

  // Multiplicative inverse via linear solve against the multiplication matrix.
  Cyc inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    int d = field_->degree();
    // Columns: this * zeta^j expressed in the power basis.
    std::vector<std::vector<Rational>> mat(d, std::vector<Rational>(d + 1, Rational(0)));
    for (int j = 0; j < d; ++j) {
      Cyc col = *this * Cyc::root(*field_, j);
      for (int i = 0; i < d; ++i) mat[i][j] = col.coef_[i];
    }
    mat[0][d] = Rational(1);
    // Gaussian elimination.
    int row = 0;
    std::vector<int> pivot_col(d, -1);
    for (int col = 0; col < d && row < d; ++col) {
      int p = -1;
      for (int i = row; i < d; ++i)
        if (!mat[i][col].is_zero()) { p = i; break; }
      if (p < 0) continue;
      std::swap(mat[p], mat[row]);
      Rational inv = Rational(1) / mat[row][col];
      for (auto& c : mat[row]) c *= inv;
      for (int i = 0; i < d; ++i) {
        if (i == row || mat[i][col].is_zero()) continue;
        Rational f = mat[i][col];
        for (int j = col; j <= d; ++j) mat[i][j] -= f * mat[row][j];
      }
      pivot_col[row] = col;
      ++row;
    }
    Cyc r(*field_);
    for (int i = 0; i < row; ++i)
      if (pivot_col[i] >= 0) r.coef_[pivot_col[i]] = mat[i][d];
    return r;
  }

  std::string str() const {
    std::string s;
    for (int i = 0; i < field_->degree(); ++i) {
      if (coef_[i].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += coef_[i].str();
      if (i > 0) s += "*z^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
  }
  friend std::ostream& operator<<(std::ostream& os, const Cyc& c) { return os << c.str(); }

 private:
  void check_same(const Cyc& o) const {
    if (field_ != o.field_) throw std::invalid_argument("mixed cyclotomic fields");
  }

  const CycField* field_;
  std::vector<Rational> coef_;
};

}  // namespace grady
