#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "grady/fin_ab_group.hpp"
#include "grady/gf2.hpp"
#include "grady/smith.hpp"

namespace grady {

// A finitely presented abelian group reduced to canonical coordinates via
// Smith normal form. Generators map to elements of the canonical group.
class AbPresentation {
 public:
  // relations: rows over the generators (integer exponent vectors)
  AbPresentation(int num_generators, IntMat relations) : ngens_(num_generators) {
    // cokernel of the transposed relation matrix
    int r = static_cast<int>(relations.size());
    IntMat a(ngens_, std::vector<std::int64_t>(r, 0));
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(relations[i].size()) != ngens_)
        throw std::invalid_argument("relation row has wrong length");
      for (int j = 0; j < ngens_; ++j) a[j][i] = relations[i][j];
    }
    auto s = smith(a);  // U*A*V = D, coker Z^n/im(A) = Z^n/im(D) via x -> U x
    u_ = std::move(s.u);
    diag_.assign(ngens_, 0);
    int lim = std::min(ngens_, r);
    for (int i = 0; i < lim; ++i) diag_[i] = s.d[i][i];
    // canonical coordinates: keep entries with diag > 1 (torsion) and
    // diag == 0 (free); drop diag == 1
    std::vector<std::int64_t> orders;
    for (int i = 0; i < ngens_; ++i) {
      if (diag_[i] > 1) {
        keep_.push_back(i);
        orders.push_back(diag_[i]);
      }
    }
    int free_rank = 0;
    for (int i = 0; i < ngens_; ++i)
      if (diag_[i] == 0) {
        keep_.push_back(i);
        ++free_rank;
      }
    group_ = FinAbGroup(orders, free_rank);
  }

  const FinAbGroup& group() const { return group_; }

  // Image of a word in the original generators.
  AbElem project(const std::vector<std::int64_t>& word) const {
    if (static_cast<int>(word.size()) != ngens_)
      throw std::invalid_argument("word has wrong length");
    AbElem full(ngens_, 0);
    for (int i = 0; i < ngens_; ++i) {
      std::int64_t acc = 0;
      for (int j = 0; j < ngens_; ++j)
        acc = checked_add(acc, checked_mul(u_[i][j], word[j]));
      full[i] = acc;
    }
    AbElem out;
    out.reserve(keep_.size());
    for (int idx : keep_) out.push_back(full[idx]);
    return group_.reduce(std::move(out));
  }

  AbElem generator_image(int g) const {
    std::vector<std::int64_t> word(ngens_, 0);
    word[g] = 1;
    return project(word);
  }

 private:
  int ngens_;
  IntMat u_;
  std::vector<std::int64_t> diag_;
  std::vector<int> keep_;
  FinAbGroup group_;
};

// The universal grading group of the matrix constructions: generated by the
// support T together with the basis degrees u_1..u_{q+2s}, subject to
//   u_1^2 t_1^{-1} = ... = u_q^2 t_q^{-1} = u_{q+1} u_{q+2} = ...
// and the normalization u_1 = e. Returns the canonical group, the images of
// u_1..u_k, and the embedding of T's generators.
struct UniversalGroup {
  FinAbGroup group;
  std::vector<AbElem> u;        // images of the basis degrees
  std::vector<AbElem> t_gens;   // images of the support generators
};

inline UniversalGroup universal_group_M(const FinAbGroup& T, int q, int s,
                                        const std::vector<AbElem>& tbar) {
  if (q < 0 || s < 0 || q + 2 * s < 1)
    throw std::invalid_argument("need q,s >= 0 with q+2s >= 1");
  if (static_cast<int>(tbar.size()) != q)
    throw std::invalid_argument("tbar must list q degrees");
  if (!T.is_torsion()) throw std::invalid_argument("support must be finite");
  int nt = T.torsion_rank();
  int k = q + 2 * s;
  int ngens = nt + k;

  for (const AbElem& t : tbar)
    if (static_cast<int>(t.size()) != T.coords())
      throw std::invalid_argument("degree outside the support group");

  IntMat rel;
  // support torsion
  for (int i = 0; i < nt; ++i) {
    std::vector<std::int64_t> row(ngens, 0);
    row[i] = T.orders()[i];
    rel.push_back(std::move(row));
  }
  // relation words r_i as exponent vectors
  auto rel_word = [&](int i) {
    std::vector<std::int64_t> row(ngens, 0);
    if (i < q) {
      row[nt + i] = 2;
      for (int j = 0; j < nt; ++j) row[j] = -tbar[i][j];
    } else {
      int pair = i - q;
      row[nt + q + 2 * pair] = 1;
      row[nt + q + 2 * pair + 1] = 1;
    }
    return row;
  };
  for (int i = 0; i + 1 < q + s; ++i) {
    auto a = rel_word(i), b = rel_word(i + 1);
    std::vector<std::int64_t> row(ngens, 0);
    for (int j = 0; j < ngens; ++j) row[j] = checked_sub(a[j], b[j]);
    rel.push_back(std::move(row));
  }
  // normalization u_1 = e
  {
    std::vector<std::int64_t> row(ngens, 0);
    row[nt] = 1;
    rel.push_back(std::move(row));
  }

  AbPresentation pres(ngens, rel);
  UniversalGroup out;
  out.group = pres.group();
  for (int i = 0; i < k; ++i) out.u.push_back(pres.generator_image(nt + i));
  for (int j = 0; j < nt; ++j) out.t_gens.push_back(pres.generator_image(j));

  // the support embeds: its image must have full size
  std::set<AbElem> image;
  for (const AbElem& t : T.torsion_elements()) {
    AbElem img = out.group.zero();
    for (int j = 0; j < nt; ++j)
      img = out.group.add(img, out.group.scale(t[j], out.t_gens[j]));
    image.insert(img);
  }
  if (image.size() != T.torsion_size())
    throw std::logic_error("support does not embed in the universal group");
  return out;
}

// Universal group of the exchange construction: T x Z^{k-1}.
inline FinAbGroup universal_group_Mex(const FinAbGroup& T, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  return FinAbGroup(T.orders(), k - 1);
}

// Torsion isomorphism type of the universal group computed by the
// flag-pullback counting formula (independent of the presentation route):
// the 2-adic layer counts change by dim(U_i/U_{i-1}) - dim(U_{i+1}/U_i),
// where U_i is the preimage of the flag step V_{i-1} under the map sending
// the j-th basis vector of Z_2^{q-1} to the class of t_{j+1} - t_1.
inline std::vector<std::int64_t> universal_group_torsion_formula(
    const FinAbGroup& T, int q, const std::vector<AbElem>& tbar) {
  if (q < 1) throw std::invalid_argument("formula needs q >= 1");
  if (static_cast<int>(tbar.size()) != q)
    throw std::invalid_argument("tbar must list q degrees");

  // primary decomposition of each cyclic factor
  struct P2 {
    int idx;   // coordinate in T
    int a;     // 2-exponent of the factor order
  };
  std::vector<P2> twos;
  std::map<std::int64_t, std::vector<int>> n_p;  // p -> n_i(p), i >= 1
  for (int j = 0; j < T.torsion_rank(); ++j) {
    std::int64_t d = T.orders()[j];
    std::int64_t p = 2;
    while (d > 1) {
      if (p * p > d) p = d;
      if (d % p != 0) { ++p; continue; }
      int e = 0;
      while (d % p == 0) { d /= p; ++e; }
      if (static_cast<int>(n_p[p].size()) < e) n_p[p].resize(e, 0);
      n_p[p][e - 1]++;
      if (p == 2) twos.push_back({j, e});
    }
  }
  std::vector<int> n2 = n_p.count(2) ? n_p[2] : std::vector<int>{};

  if (q > 1) {
    // V = T / T^[2] for the 2-primary part: one GF(2) coordinate per factor
    // of even order; the class of x has bit j equal to x_j mod 2.
    int dimV = static_cast<int>(twos.size());
    std::vector<gf2vec> tau;  // images of t_{j+1} - t_1
    for (int j = 1; j < q; ++j) {
      AbElem diff = T.sub(tbar[j], tbar[0]);
      gf2vec v = 0;
      for (int b = 0; b < dimV; ++b)
        v |= gf2vec(diff[twos[b].idx] & 1) << b;
      tau.push_back(v);
    }
    int maxlevel = 0;
    for (const P2& f : twos) maxlevel = std::max(maxlevel, f.a);
    // dim U_i = (q-1) - rank of tau projected to V / V_{i-1}, where V_{i-1}
    // is spanned by coordinates with a <= i-1; U_0 = 0 by convention.
    auto dim_U = [&](int i) {
      if (i <= 0) return 0;
      std::vector<gf2vec> rows;
      for (gf2vec v : tau) {
        gf2vec proj = 0;
        for (int b = 0; b < dimV; ++b)
          if (twos[b].a > i - 1) proj |= v & (gf2vec(1) << b);
        rows.push_back(proj);
      }
      return (q - 1) - gf2_rank(rows);
    };
    std::vector<int> adjusted(std::max<std::size_t>(n2.size(), maxlevel + 1), 0);
    for (std::size_t i = 0; i < n2.size(); ++i) adjusted[i] = n2[i];
    for (int i = 1; i <= maxlevel + 1; ++i) {
      int delta_i = dim_U(i) - dim_U(i - 1);
      int delta_i1 = dim_U(i + 1) - dim_U(i);
      if (i - 1 >= static_cast<int>(adjusted.size())) adjusted.resize(i, 0);
      adjusted[i - 1] += delta_i - delta_i1;
    }
    n2 = adjusted;
  }
  n_p[2] = n2;

  // assemble invariant factors from the n_i(p)
  std::vector<std::vector<std::int64_t>> columns;
  for (auto& [p, ni] : n_p) {
    std::vector<std::int64_t> powers;
    for (int i = static_cast<int>(ni.size()); i >= 1; --i) {
      std::int64_t pk = 1;
      for (int j = 0; j < i; ++j) pk = checked_mul(pk, p);
      for (int rep = 0; rep < ni[i - 1]; ++rep) powers.push_back(pk);
    }
    columns.push_back(std::move(powers));
  }
  std::size_t rows = 0;
  for (auto& col : columns) rows = std::max(rows, col.size());
  std::vector<std::int64_t> factors(rows, 1);
  for (auto& col : columns)
    for (std::size_t i = 0; i < col.size(); ++i)
      factors[rows - 1 - i] = checked_mul(factors[rows - 1 - i], col[i]);
  return factors;
}

}  // namespace grady
