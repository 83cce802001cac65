#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "grady/gdalgebra.hpp"

namespace grady {

// An element of M_k(D) with exact cyclotomic coordinates on the basis
// E_{ij} (x) X_t. Coordinates are over Q(zeta_M), which for the second-kind
// family is the correct scalar field (components are complex lines).
class MatElem {
 public:
  MatElem() = default;
  MatElem(const GDAlgebra& D, int k)
      : D_(&D), k_(k), coord_(std::size_t(k) * k * D.carrier_size(), Cyc::zero(D.field())) {}

  static MatElem basis(const GDAlgebra& D, int k, int i, int j, int t) {
    MatElem m(D, k);
    m.at(i, j, t) = Cyc::one(D.field());
    return m;
  }

  const GDAlgebra& algebra() const { return *D_; }
  int k() const { return k_; }
  Cyc& at(int i, int j, int t) {
    return coord_[(std::size_t(i) * k_ + j) * D_->carrier_size() + t];
  }
  const Cyc& at(int i, int j, int t) const {
    return coord_[(std::size_t(i) * k_ + j) * D_->carrier_size() + t];
  }
  const std::vector<Cyc>& coords() const { return coord_; }

  bool is_zero() const {
    for (const Cyc& c : coord_)
      if (!c.is_zero()) return false;
    return true;
  }

  MatElem operator-() const {
    MatElem r = *this;
    for (Cyc& c : r.coord_) c = -c;
    return r;
  }
  friend MatElem operator+(const MatElem& a, const MatElem& b) {
    MatElem r = a;
    for (std::size_t i = 0; i < r.coord_.size(); ++i) r.coord_[i] += b.coord_[i];
    return r;
  }
  friend MatElem operator-(const MatElem& a, const MatElem& b) { return a + (-b); }
  MatElem scaled(const Cyc& c) const {
    MatElem r = *this;
    for (Cyc& x : r.coord_) x *= c;
    return r;
  }

  friend MatElem operator*(const MatElem& a, const MatElem& b) {
    const GDAlgebra& D = *a.D_;
    MatElem r(D, a.k_);
    int n = D.carrier_size();
    for (int i = 0; i < a.k_; ++i)
      for (int j = 0; j < a.k_; ++j)
        for (int s = 0; s < n; ++s) {
          const Cyc& ca = a.at(i, j, s);
          if (ca.is_zero()) continue;
          for (int l = 0; l < a.k_; ++l)
            for (int t = 0; t < n; ++t) {
              const Cyc& cb = b.at(j, l, t);
              if (cb.is_zero()) continue;
              AbElem ds = D.elem_at(s), dt = D.elem_at(t);
              Cyc unit = Cyc::root(D.field(), D.sigma_exp(ds, dt));
              r.at(i, l, D.elem_index(D.support().add(ds, dt))) += ca * cb * unit;
            }
        }
    return r;
  }

  friend bool operator==(const MatElem& a, const MatElem& b) { return a.coord_ == b.coord_; }

 private:
  const GDAlgebra* D_ = nullptr;
  int k_ = 0;
  std::vector<Cyc> coord_;
};

// Reduced-echelon span over Q(zeta) for membership and rank computations.
class SpanBasis {
 public:
  void insert(MatElem v) {
    reduce(v);
    if (v.is_zero()) return;
    std::size_t lead = lead_index(v);
    Cyc inv = v.coords()[lead].inverse();
    rows_.push_back(v.scaled(inv));
    back_reduce();
  }

  bool contains(MatElem v) const {
    reduce(v);
    return v.is_zero();
  }

  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<MatElem>& rows() const { return rows_; }

 private:
  static std::size_t lead_index(const MatElem& v) {
    const auto& c = v.coords();
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!c[i].is_zero()) return i;
    throw std::logic_error("lead of zero vector");
  }

  void reduce(MatElem& v) const {
    for (const MatElem& row : rows_) {
      std::size_t lead = lead_index(row);
      const Cyc& c = v.coords()[lead];
      if (!c.is_zero()) v = v - row.scaled(c);
    }
  }

  void back_reduce() {
    std::sort(rows_.begin(), rows_.end(), [](const MatElem& a, const MatElem& b) {
      return lead_index(a) < lead_index(b);
    });
    for (int r = static_cast<int>(rows_.size()) - 1; r >= 0; --r)
      for (int q = 0; q < r; ++q) {
        std::size_t lead = lead_index(rows_[r]);
        const Cyc& c = rows_[q].coords()[lead];
        if (!c.is_zero()) rows_[q] = rows_[q] - rows_[r].scaled(c);
      }
  }

  std::vector<MatElem> rows_;
};

}  // namespace grady
