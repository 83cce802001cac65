#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "grady/fin_ab_group.hpp"
#include "grady/gf2.hpp"
#include "grady/group_action.hpp"
#include "grady/isometry.hpp"
#include "grady/quadspace.hpp"

namespace grady {

// The filtration of V = T / T^[2] by the images of the 2-torsion layers
// T_[2^i], together with the nondegenerate alternating form each quotient
// inherits from the 2^{i-1}-th power of the bicharacter.
//
// Coordinates of V: one GF(2) coordinate per cyclic factor of T of even
// order; the class of x has bit j equal to x_j mod 2. The factor with
// 2-exponent a contributes its bit to V_i exactly when a <= i.
struct Flag2 {
  int dim = 0;                          // dim V
  std::vector<int> coord_level;         // 2-exponent a_j of the j-th coordinate
  std::vector<int> levels;              // sorted distinct nontrivial levels
  std::map<int, GF2Matrix> quotient_form;  // level -> Gram matrix on that block
  std::vector<int> coord_factor;        // index of the T-factor behind each bit

  int length() const { return static_cast<int>(levels.size()); }

  gf2vec level_mask(int lev) const {  // coordinates with a_j == lev
    gf2vec m = 0;
    for (int b = 0; b < dim; ++b)
      if (coord_level[b] == lev) m |= gf2vec(1) << b;
    return m;
  }
  gf2vec upto_mask(int lev) const {  // V_lev: coordinates with a_j <= lev
    gf2vec m = 0;
    for (int b = 0; b < dim; ++b)
      if (coord_level[b] <= lev) m |= gf2vec(1) << b;
    return m;
  }
};

// Builds the flag of T with respect to a nondegenerate alternating
// bicharacter beta(s,t) = zeta_N^{b(s,t)} given by its exponent table.
template <typename BetaExp>
Flag2 build_flag(const FinAbGroup& T, BetaExp&& b, std::int64_t N) {
  if (!T.is_torsion()) throw std::invalid_argument("flag needs a finite group");
  // reject degenerate bicharacters up front
  {
    auto all = T.torsion_elements();
    for (const AbElem& s : all) {
      if (T.is_zero(s)) continue;
      bool radical = true;
      for (const AbElem& t : all)
        if (b(s, t) % N != 0) { radical = false; break; }
      if (radical) throw std::invalid_argument("bicharacter is degenerate");
    }
  }
  Flag2 f;
  for (int j = 0; j < T.torsion_rank(); ++j) {
    std::int64_t d = T.orders()[j];
    int a = 0;
    while (d % 2 == 0) { d /= 2; ++a; }
    if (a > 0) {
      f.coord_level.push_back(a);
      f.coord_factor.push_back(j);
    }
  }
  f.dim = static_cast<int>(f.coord_level.size());
  std::set<int> lvls(f.coord_level.begin(), f.coord_level.end());
  f.levels.assign(lvls.begin(), lvls.end());

  // Quotient form on the level-i block: representatives (d_j / 2^i) e_j lie
  // in T_[2^i]; the form value is beta^{2^{i-1}} read as an element of GF(2).
  for (int lev : f.levels) {
    std::vector<int> bits;
    for (int bit = 0; bit < f.dim; ++bit)
      if (f.coord_level[bit] == lev) bits.push_back(bit);
    GF2Matrix gram(static_cast<int>(bits.size()), static_cast<int>(bits.size()));
    for (std::size_t x = 0; x < bits.size(); ++x)
      for (std::size_t y = 0; y < bits.size(); ++y) {
        int jx = f.coord_factor[bits[x]];
        int jy = f.coord_factor[bits[y]];
        AbElem rx = T.zero(), ry = T.zero();
        rx[jx] = T.orders()[jx] >> lev;
        ry[jy] = T.orders()[jy] >> lev;
        // exponent of beta^(2^{lev-1}) as a sign
        std::int64_t e = b(rx, ry) % N;
        if (e < 0) e += N;
        std::int64_t pow = (static_cast<std::int64_t>(1) << (lev - 1)) % N;
        std::int64_t val = (e * pow) % N;
        int sign_bit;
        if (val == 0) sign_bit = 0;
        else if (2 * val == N) sign_bit = 1;
        else throw std::logic_error("quotient form value is not a sign");
        gram.set(static_cast<int>(x), static_cast<int>(y), sign_bit);
      }
    // nondegeneracy of each quotient form
    if (gf2_rank(gram.row) != gram.rows)
      throw std::logic_error("degenerate quotient form in the flag");
    f.quotient_form[lev] = gram;
  }
  return f;
}

namespace detail {

inline bool stabilizes_flag(const Flag2& f, const GF2Matrix& m) {
  for (int lev : f.levels) {
    gf2vec sub = f.upto_mask(lev);
    for (int b = 0; b < f.dim; ++b)
      if ((sub >> b) & 1)
        if (m.apply(gf2vec(1) << b) & ~sub) return false;
  }
  // induced maps must preserve each quotient form
  for (int lev : f.levels) {
    std::vector<int> bits;
    for (int b = 0; b < f.dim; ++b)
      if (f.coord_level[b] == lev) bits.push_back(b);
    gf2vec below = lev > 0 ? f.upto_mask(lev - 1) : 0;
    (void)below;
    const GF2Matrix& gram = f.quotient_form.at(lev);
    gf2vec mask = f.level_mask(lev);
    auto quot_pair = [&](gf2vec u, gf2vec v) {
      int p = 0;
      for (std::size_t x = 0; x < bits.size(); ++x)
        if ((u >> bits[x]) & 1)
          for (std::size_t y = 0; y < bits.size(); ++y)
            if ((v >> bits[y]) & 1) p ^= gram.get(static_cast<int>(x), static_cast<int>(y));
      return p;
    };
    for (std::size_t x = 0; x < bits.size(); ++x)
      for (std::size_t y = x + 1; y < bits.size(); ++y) {
        gf2vec iu = m.apply(gf2vec(1) << bits[x]) & mask;
        gf2vec iv = m.apply(gf2vec(1) << bits[y]) & mask;
        if (quot_pair(iu, iv) != gram.get(static_cast<int>(x), static_cast<int>(y)))
          return false;
      }
  }
  return true;
}

}  // namespace detail

// Stabilizer of the flag and all its quotient forms inside GL(V,2).
// Exhaustive filter for dim <= 4; block generators (symplectic transvections
// per level plus elementary maps into lower levels) for dim 5..6.
inline GroupAction flag_stabilizer(const Flag2& f) {
  int d = f.dim;
  if (d > 6) throw std::invalid_argument("flag stabilizer limited to dim <= 6");
  std::vector<Perm> gens;
  if (d <= 4) {
    std::uint64_t total = std::uint64_t(1) << (d * d);
    for (std::uint64_t bits = 0; bits < total; ++bits) {
      GF2Matrix m(d, d);
      for (int i = 0; i < d; ++i) m.row[i] = gf2vec((bits >> (i * d)) & ((1u << d) - 1));
      if (!gf2_invertible(m)) continue;
      if (!detail::stabilizes_flag(f, m)) continue;
      gens.push_back(detail::perm_of_matrix(m));
    }
  } else {
    std::vector<GF2Matrix> mats;
    // symplectic transvections inside each level block
    for (int lev : f.levels) {
      std::vector<int> bits;
      for (int b = 0; b < d; ++b)
        if (f.coord_level[b] == lev) bits.push_back(b);
      const GF2Matrix& gram = f.quotient_form.at(lev);
      for (gf2vec w = 1; w < (gf2vec(1) << bits.size()); ++w) {
        GF2Matrix m = GF2Matrix::identity(d);
        gf2vec v = 0;
        for (std::size_t x = 0; x < bits.size(); ++x)
          if ((w >> x) & 1) v |= gf2vec(1) << bits[x];
        for (std::size_t x = 0; x < bits.size(); ++x) {
          int pair = 0;
          for (std::size_t y = 0; y < bits.size(); ++y)
            if ((w >> y) & 1) pair ^= gram.get(static_cast<int>(x), static_cast<int>(y));
          if (pair) {
            // column bits[x] gains v
            for (int i = 0; i < d; ++i)
              if ((v >> i) & 1) m.set(i, bits[x], m.get(i, bits[x]) ^ 1);
          }
        }
        mats.push_back(m);
      }
    }
    // elementary maps from higher levels into strictly lower ones
    for (int bj = 0; bj < d; ++bj)
      for (int bk = 0; bk < d; ++bk)
        if (f.coord_level[bj] < f.coord_level[bk]) {
          GF2Matrix m = GF2Matrix::identity(d);
          m.set(bj, bk, 1);
          mats.push_back(m);
        }
    for (const auto& m : mats) gens.push_back(detail::perm_of_matrix(m));
  }
  if (gens.empty()) gens.push_back(perm_identity(1 << d));
  return GroupAction(1 << d, std::move(gens), "flag quotient space");
}

// Expected order of the flag stabilizer: the unipotent block times the
// symplectic group of each quotient.
inline std::uint64_t flag_stabilizer_order_formula(const Flag2& f);

// Image in GL(V) of the group of bicharacter-preserving automorphisms of T,
// by brute-force enumeration over each primary component. Elements of the
// image are returned as matrices on the V coordinates.
template <typename BetaExp>
std::vector<GF2Matrix> aut_beta_image(const FinAbGroup& T, BetaExp&& b, std::int64_t N) {
  // Only the 2-primary part acts on V; odd primary parts are orthogonal to
  // it under any nondegenerate alternating bicharacter, so we enumerate the
  // beta-preserving automorphisms of the 2-part alone.
  std::vector<int> two_idx;
  for (int j = 0; j < T.torsion_rank(); ++j) {
    std::int64_t d = T.orders()[j];
    if (d % 2 == 0) {
      while (d % 2 == 0) d /= 2;
      if (d != 1)
        throw std::invalid_argument("cyclic factors must be prime powers");
      two_idx.push_back(j);
    }
  }
  int r2 = static_cast<int>(two_idx.size());
  Flag2 flag = build_flag(T, b, N);
  if (r2 == 0) return {GF2Matrix::identity(0)};

  // candidate images for generator j: elements of the 2-part killed by the
  // generator's order
  FinAbGroup T2([&] {
    std::vector<std::int64_t> ords;
    for (int j : two_idx) ords.push_back(T.orders()[j]);
    return ords;
  }(), 0);
  std::vector<std::vector<AbElem>> candidates(r2);
  for (int x = 0; x < r2; ++x)
    candidates[x] = torsion_kernel(T2, T.orders()[two_idx[x]]);

  // exponent table restricted to the 2-part, embedded back into T
  auto embed = [&](const AbElem& x2) {
    AbElem full = T.zero();
    for (int x = 0; x < r2; ++x) full[two_idx[x]] = x2[x];
    return full;
  };
  std::set<std::vector<gf2vec>> image_rows;
  std::vector<GF2Matrix> image;
  std::vector<AbElem> pick(r2);
  std::vector<AbElem> gens2(r2);
  for (int x = 0; x < r2; ++x) {
    gens2[x] = T2.zero();
    gens2[x][x] = 1;
  }
  // depth-first over candidate tuples with incremental beta filtering
  std::vector<std::size_t> idx(r2, 0);
  int depth = 0;
  while (depth >= 0) {
    if (idx[depth] == candidates[depth].size()) {
      idx[depth] = 0;
      --depth;
      if (depth >= 0) ++idx[depth];
      continue;
    }
    pick[depth] = candidates[depth][idx[depth]];
    // beta compatibility against previous picks and itself
    bool ok = true;
    for (int prev = 0; prev <= depth && ok; ++prev) {
      std::int64_t want = b(embed(gens2[depth]), embed(gens2[prev]));
      std::int64_t got = b(embed(pick[depth]), embed(pick[prev]));
      if (((want - got) % N + N) % N != 0) ok = false;
    }
    if (!ok) { ++idx[depth]; continue; }
    if (depth + 1 < r2) { ++depth; continue; }
    // full tuple: beta-preserving homomorphisms are automatically bijective
    GF2Matrix m(flag.dim, flag.dim);
    for (int col = 0; col < r2; ++col)
      for (int row = 0; row < r2; ++row)
        m.set(row, col, pick[col][row] & 1);
    if (image_rows.insert(m.row).second) image.push_back(m);
    ++idx[depth];
  }
  return image;
}

inline std::uint64_t flag_stabilizer_order_formula(const Flag2& f) {
  std::uint64_t ord = 1;
  std::map<int, int> block_dim;
  for (int lev : f.levels) {
    int n = 0;
    for (int b = 0; b < f.dim; ++b)
      if (f.coord_level[b] == lev) ++n;
    block_dim[lev] = n;
    // |Sp(n,2)|
    std::uint64_t sp = 1;
    for (int i = 1; i <= n / 2; ++i) {
      sp <<= 2 * i - 1;
      sp *= (std::uint64_t(1) << (2 * i)) - 1;
    }
    ord *= sp;
  }
  int off = 0;
  auto lv = f.levels;
  for (std::size_t i = 0; i < lv.size(); ++i)
    for (std::size_t j = i + 1; j < lv.size(); ++j)
      off += block_dim[lv[i]] * block_dim[lv[j]];
  return ord << off;
}

}  // namespace grady
