#pragma once

#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "grady/cyclotomic.hpp"
#include "grady/fin_ab_group.hpp"
#include "grady/flag.hpp"
#include "grady/group_action.hpp"
#include "grady/isometry.hpp"
#include "grady/quadspace.hpp"

namespace grady {

// The six families of real graded-division algebras with involution whose
// identity component sits inside the center.
enum class GDFamily {
  RealPlus,     // D(2m;+1)  ~ M_{2^m}(R), transpose
  RealMinus,    // D(2m;-1)  ~ M_{2^{m-1}}(H), conjugate transpose
  ComplexReal,  // D(2m+1;R) ~ M_{2^m}(C), conjugate transpose, D_e = R
  ComplexPauli, // D(l1..lm;C) ~ M_l(C), second kind, D_e = C
  SplitPlus,    // D(2m+1;+1) ~ M_{2^m}(R)^2, exchange-like involution
  SplitMinus,   // D(2m+1;-1) ~ M_{2^{m-1}}(H)^2
};

enum class InvolutionKind { Orthogonal, Symplectic, SecondKind, Exchange };

struct GDLabel {
  GDFamily family;
  int m = 0;              // all families except ComplexPauli
  std::vector<int> ells;  // ComplexPauli only

  std::string str() const {
    std::ostringstream os;
    switch (family) {
      case GDFamily::RealPlus: os << "D(" << 2 * m << ";+1)"; break;
      case GDFamily::RealMinus: os << "D(" << 2 * m << ";-1)"; break;
      case GDFamily::ComplexReal: os << "D(" << 2 * m + 1 << ";R)"; break;
      case GDFamily::SplitPlus: os << "D(" << 2 * m + 1 << ";+1)"; break;
      case GDFamily::SplitMinus: os << "D(" << 2 * m + 1 << ";-1)"; break;
      case GDFamily::ComplexPauli: {
        os << "D(";
        for (std::size_t i = 0; i < ells.size(); ++i) os << (i ? "," : "") << ells[i];
        os << ";C)";
        break;
      }
    }
    return os.str();
  }

  static GDLabel parse(const std::string& text);
};

inline bool is_prime_power(int n) {
  if (n < 2) return false;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      return n == 1;
    }
  return true;
}

inline GDLabel parse_gd_label(const std::string& text) {
  auto fail = [&] { throw std::invalid_argument("malformed graded-division label: " + text); };
  if (text.size() < 5 || text.substr(0, 2) != "D(" || text.back() != ')') fail();
  std::string body = text.substr(2, text.size() - 3);
  auto semi = body.find(';');
  if (semi == std::string::npos) fail();
  std::string nums = body.substr(0, semi);
  std::string tag = body.substr(semi + 1);
  std::vector<int> values;
  std::istringstream ns(nums);
  std::string tok;
  while (std::getline(ns, tok, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size() || v < 0) fail();
      values.push_back(v);
    } catch (const std::exception&) {
      fail();
    }
  }
  if (values.empty()) fail();
  GDLabel label;
  if (tag == "C") {
    label.family = GDFamily::ComplexPauli;
    label.ells = values;
    for (int l : label.ells)
      if (!is_prime_power(l)) fail();
    return label;
  }
  if (values.size() != 1) fail();
  int n = values[0];
  if (tag == "+1") {
    if (n % 2 == 0) { label.family = GDFamily::RealPlus; label.m = n / 2; }
    else { label.family = GDFamily::SplitPlus; label.m = (n - 1) / 2; }
  } else if (tag == "-1") {
    if (n % 2 == 0) {
      label.family = GDFamily::RealMinus;
      label.m = n / 2;
      if (label.m < 1) fail();
    } else {
      label.family = GDFamily::SplitMinus;
      label.m = (n - 1) / 2;
      if (label.m < 1) fail();
    }
  } else if (tag == "R") {
    if (n % 2 == 0) fail();
    label.family = GDFamily::ComplexReal;
    label.m = (n - 1) / 2;
  } else {
    fail();
  }
  return label;
}

inline GDLabel GDLabel::parse(const std::string& text) { return parse_gd_label(text); }

// A real graded-division algebra from the catalog: a twisted group algebra
// of its support T with exact root-of-unity structure constants, carrying
// the family's reference involution.
class GDAlgebra {
 public:
  explicit GDAlgebra(const GDLabel& label) : label_(label) {
    switch (label.family) {
      case GDFamily::RealPlus:
      case GDFamily::RealMinus: {
        if (label.m < 0 || (label.family == GDFamily::RealMinus && label.m < 1))
          throw std::invalid_argument("invalid parameter for real family");
        orders_.assign(2 * label.m, 2);
        root_order_ = 2;
        break;
      }
      case GDFamily::ComplexReal:
      case GDFamily::SplitPlus:
      case GDFamily::SplitMinus: {
        if (label.m < 0 || (label.family == GDFamily::SplitMinus && label.m < 1))
          throw std::invalid_argument("invalid parameter for split family");
        orders_.assign(2 * label.m, 2);
        orders_.push_back(2);  // central coordinate
        root_order_ = 2;
        break;
      }
      case GDFamily::ComplexPauli: {
        if (label.ells.empty())
          throw std::invalid_argument("complex Pauli family needs factor sizes");
        std::int64_t l = 1;
        for (int lj : label.ells) {
          if (lj < 2 || !is_prime_power(lj))
            throw std::invalid_argument("factor sizes must be prime powers >= 2");
          orders_.push_back(lj);
          orders_.push_back(lj);
          l = std::lcm<std::int64_t>(l, lj);
        }
        root_order_ = static_cast<int>(std::lcm<std::int64_t>(4, 2 * l));
        break;
      }
    }
    T_ = FinAbGroup(orders_, 0);
    field_ = &cyc_field(root_order_);
  }

  static GDAlgebra build(const std::string& label) { return GDAlgebra(GDLabel::parse(label)); }

  const GDLabel& label() const { return label_; }
  const FinAbGroup& support() const { return T_; }
  int root_order() const { return root_order_; }
  const CycField& field() const { return *field_; }
  bool conjugating() const { return label_.family == GDFamily::ComplexPauli; }
  bool two_elementary() const {
    for (auto d : orders_)
      if (d != 2) return false;
    return true;
  }

  // real dimension of each homogeneous component
  int component_dim() const { return label_.family == GDFamily::ComplexPauli ? 2 : 1; }

  // Cocycle exponent: X_s X_t = zeta^{sigma(s,t)} X_{st}.
  std::int64_t sigma_exp(const AbElem& s, const AbElem& t) const {
    std::int64_t M = root_order_;
    std::int64_t e = 0;
    switch (label_.family) {
      case GDFamily::RealPlus:
      case GDFamily::RealMinus: {
        e = pauli_sign_exp(s, t, 0, label_.m, label_.family == GDFamily::RealMinus);
        return (e % 2) * (M / 2);
      }
      case GDFamily::ComplexReal: {
        e = pauli_sign_exp(s, t, 0, label_.m, false);
        // the central factor is spanned by i: i*i = -1
        e += (s[2 * label_.m] + t[2 * label_.m]) / 2;
        return (e % 2) * (M / 2);
      }
      case GDFamily::SplitPlus:
      case GDFamily::SplitMinus: {
        e = pauli_sign_exp(s, t, 0, label_.m, label_.family == GDFamily::SplitMinus);
        return (e % 2) * (M / 2);  // split-center generator squares to +1
      }
      case GDFamily::ComplexPauli: {
        std::int64_t total = 0;
        for (std::size_t j = 0; j < label_.ells.size(); ++j) {
          std::int64_t l = label_.ells[j];
          std::int64_t i1 = s[2 * j], j1 = s[2 * j + 1];
          std::int64_t i2 = t[2 * j], j2 = t[2 * j + 1];
          std::int64_t i3 = (i1 + i2) % l, j3 = (j1 + j2) % l;
          std::int64_t exp2l = ((i3 * j3 - i1 * j1 - i2 * j2 - 2 * j1 * i2) % (2 * l) + 2 * l) % (2 * l);
          total = (total + exp2l * (M / (2 * l))) % M;
        }
        return total;
      }
    }
    return 0;
  }

  std::int64_t beta_exp(const AbElem& s, const AbElem& t) const {
    std::int64_t M = root_order_;
    return ((sigma_exp(s, t) - sigma_exp(t, s)) % M + M) % M;
  }
  // beta as a sign, defined when the value is +-1
  int beta_sign(const AbElem& s, const AbElem& t) const {
    std::int64_t e = beta_exp(s, t);
    if (e == 0) return +1;
    if (2 * e == root_order_) return -1;
    throw std::domain_error("bicharacter value is not a sign");
  }

  // Square class of a nonzero homogeneous element: x^2 in mu(t) R_{>0}.
  // Defined for the families with 1-dimensional real components.
  int mu(const AbElem& t) const {
    if (label_.family == GDFamily::ComplexPauli)
      throw std::domain_error("square-class form undefined when D_e = C");
    std::int64_t e = sigma_exp(t, t);
    return e == 0 ? +1 : -1;
  }

  // Involution sign: phi0(x) = eta(t) x on the component of degree t (with
  // scalar conjugation in the second-kind family, where eta is trivial).
  int eta(const AbElem& t) const {
    switch (label_.family) {
      case GDFamily::RealPlus:
      case GDFamily::RealMinus:
        return mu(t);
      case GDFamily::ComplexReal:
      case GDFamily::SplitPlus:
      case GDFamily::SplitMinus: {
        int sign = mu_base(t);
        if (t[2 * label_.m] % 2 != 0) sign = -sign;
        return sign;
      }
      case GDFamily::ComplexPauli:
        return +1;
    }
    return +1;
  }

  std::vector<AbElem> center_support() const {
    std::vector<AbElem> rad;
    for (const AbElem& s : T_.torsion_elements()) {
      bool central = true;
      for (const AbElem& t : T_.torsion_elements())
        if (beta_exp(s, t) != 0) { central = false; break; }
      if (central) rad.push_back(s);
    }
    return rad;
  }

  InvolutionKind involution_type() const {
    switch (label_.family) {
      case GDFamily::RealPlus:
      case GDFamily::RealMinus: {
        // orthogonal iff the majority value of eta is +1
        std::int64_t plus = 0, minus = 0;
        for (const AbElem& t : T_.torsion_elements()) (eta(t) > 0 ? plus : minus)++;
        if (plus == minus) throw std::logic_error("involution sign table has no majority");
        return plus > minus ? InvolutionKind::Orthogonal : InvolutionKind::Symplectic;
      }
      case GDFamily::ComplexReal:
      case GDFamily::ComplexPauli:
        return InvolutionKind::SecondKind;
      case GDFamily::SplitPlus:
      case GDFamily::SplitMinus:
        return InvolutionKind::Exchange;
    }
    return InvolutionKind::Orthogonal;
  }

  // ---- homogeneous element arithmetic ----

  struct HomElem {
    AbElem degree;
    Cyc coeff;
  };

  HomElem monomial(const AbElem& t, Cyc c) const { return {T_.reduce(t), std::move(c)}; }
  HomElem monomial(const AbElem& t) const { return monomial(t, Cyc::one(*field_)); }
  HomElem monomial(const AbElem& t, std::int64_t rational) const {
    return monomial(t, Cyc(*field_, Rational(rational)));
  }

  HomElem multiply(const HomElem& x, const HomElem& y) const {
    HomElem out;
    out.degree = T_.add(x.degree, y.degree);
    out.coeff = x.coeff * y.coeff * Cyc::root(*field_, sigma_exp(x.degree, y.degree));
    return out;
  }

  HomElem phi0(const HomElem& x) const {
    HomElem out;
    out.degree = x.degree;
    Cyc c = conjugating() ? x.coeff.conj() : x.coeff;
    if (eta(x.degree) < 0) c = -c;
    out.coeff = std::move(c);
    return out;
  }

  HomElem inverse(const HomElem& x) const {
    if (x.coeff.is_zero()) throw std::domain_error("inverse of zero element");
    HomElem out;
    out.degree = T_.neg(x.degree);
    // X_t^{-1} = zeta^{-sigma(t,-t)} X_{-t} up to the unit X_e normalization
    Cyc unit = Cyc::root(*field_, sigma_exp(x.degree, out.degree));
    out.coeff = (x.coeff * unit).inverse();
    return out;
  }

  // ---- carrier indexing for group actions on T ----

  // little-endian mixed radix; for 2-elementary supports this is the GF(2)
  // bitmask with bit j = coordinate j, matching the isometry carriers
  int elem_index(const AbElem& x) const {
    AbElem r = T_.reduce(x);
    int idx = 0;
    int mult = 1;
    for (int j = 0; j < T_.torsion_rank(); ++j) {
      idx += static_cast<int>(r[j]) * mult;
      mult *= static_cast<int>(orders_[j]);
    }
    return idx;
  }
  AbElem elem_at(int idx) const {
    AbElem x = T_.zero();
    for (int j = 0; j < T_.torsion_rank(); ++j) {
      x[j] = idx % orders_[j];
      idx /= static_cast<int>(orders_[j]);
    }
    return x;
  }
  int carrier_size() const { return static_cast<int>(T_.torsion_size()); }

  // The group of self-equivalences of the grading, as permutations of T.
  GroupAction weyl_group() const;

  // mu of the non-central part for the split and complex-real families
  int mu_base(const AbElem& t) const {
    std::int64_t e = pauli_sign_exp(t, t, 0, label_.m,
                                    label_.family == GDFamily::RealMinus ||
                                        label_.family == GDFamily::SplitMinus);
    return e % 2 == 0 ? +1 : -1;
  }

 private:
  // Sign exponent of the real Pauli tensor factors: per factor
  // (X^{i1}Y^{j1})(X^{i2}Y^{j2}) = (-1)^{j1 i2} X^{i1+i2}Y^{j1+j2}, and the
  // quaternion variant adds the carries of i and j (i^2 = j^2 = -1).
  std::int64_t pauli_sign_exp(const AbElem& s, const AbElem& t, int from, int m,
                              bool last_is_quaternion) const {
    std::int64_t e = 0;
    for (int f = from; f < from + m; ++f) {
      std::int64_t i1 = s[2 * f] % 2, j1 = s[2 * f + 1] % 2;
      std::int64_t i2 = t[2 * f] % 2, j2 = t[2 * f + 1] % 2;
      e += j1 * i2;
      if (last_is_quaternion && f == from + m - 1) e += ((i1 + i2) / 2) + ((j1 + j2) / 2);
    }
    return e;
  }

  GDLabel label_;
  std::vector<std::int64_t> orders_;
  FinAbGroup T_;
  int root_order_ = 2;
  const CycField* field_ = nullptr;
};

using HomElem = GDAlgebra::HomElem;

namespace detail {

// Aut(T, beta) for one algebra by primary-component enumeration, returned as
// permutations of the carrier. Throws when the search space is infeasible.
inline std::vector<Perm> aut_beta_perms(const GDAlgebra& D) {
  const FinAbGroup& T = D.support();
  auto beta = [&](const AbElem& x, const AbElem& y) { return D.beta_exp(x, y); };
  std::int64_t N = D.root_order();
  // split coordinates by prime
  std::map<std::int64_t, std::vector<int>> by_prime;
  for (int j = 0; j < T.torsion_rank(); ++j) {
    std::int64_t d = T.orders()[j];
    std::int64_t p = 2;
    while (d % p != 0) ++p;
    by_prime[p].push_back(j);
  }
  // enumerate beta-preserving automorphisms of each primary part
  std::vector<std::vector<std::vector<AbElem>>> part_autos;  // per prime: list of gen-image tuples
  for (const auto& [p, idxs] : by_prime) {
    std::vector<std::int64_t> orders;
    for (int j : idxs) orders.push_back(T.orders()[j]);
    FinAbGroup Tp(orders, 0);
    double space = 1;
    std::vector<std::vector<AbElem>> candidates;
    for (std::size_t x = 0; x < idxs.size(); ++x) {
      candidates.push_back(torsion_kernel(Tp, orders[x]));
      space *= static_cast<double>(candidates.back().size());
    }
    if (space > 5e7) throw std::invalid_argument("support too large for automorphism search");
    auto embed = [&](const AbElem& xp) {
      AbElem full = T.zero();
      for (std::size_t x = 0; x < idxs.size(); ++x) full[idxs[x]] = xp[x];
      return full;
    };
    std::vector<AbElem> gens(idxs.size());
    for (std::size_t x = 0; x < idxs.size(); ++x) {
      gens[x] = Tp.zero();
      gens[x][x] = 1;
    }
    std::vector<std::vector<AbElem>> found;
    std::vector<AbElem> pick(idxs.size());
    std::vector<std::size_t> at(idxs.size(), 0);
    int depth = 0;
    int r = static_cast<int>(idxs.size());
    while (depth >= 0) {
      if (at[depth] == candidates[depth].size()) {
        at[depth] = 0;
        --depth;
        if (depth >= 0) ++at[depth];
        continue;
      }
      pick[depth] = candidates[depth][at[depth]];
      bool ok = true;
      for (int prev = 0; prev <= depth && ok; ++prev) {
        std::int64_t want = beta(embed(gens[depth]), embed(gens[prev]));
        std::int64_t got = beta(embed(pick[depth]), embed(pick[prev]));
        if (((want - got) % N + N) % N != 0) ok = false;
      }
      if (!ok) { ++at[depth]; continue; }
      if (depth + 1 < r) { ++depth; continue; }
      found.push_back(pick);
      ++at[depth];
    }
    part_autos.push_back(std::move(found));
  }
  // cartesian product of the per-part automorphisms, as T-permutations
  std::vector<int> part_at(part_autos.size(), 0);
  std::vector<Perm> perms;
  std::vector<std::vector<int>> prime_idxs;
  for (const auto& [p, idxs] : by_prime) prime_idxs.push_back(idxs);
  double total = 1;
  for (auto& pa : part_autos) total *= static_cast<double>(pa.size());
  if (total > 2e5) throw std::invalid_argument("automorphism group too large to list");
  int n = D.carrier_size();
  while (true) {
    Perm perm(n);
    for (int idx = 0; idx < n; ++idx) {
      AbElem x = D.elem_at(idx);
      AbElem img = T.zero();
      for (std::size_t part = 0; part < part_autos.size(); ++part) {
        const auto& tuple = part_autos[part][part_at[part]];
        const auto& idxs = prime_idxs[part];
        for (std::size_t g = 0; g < idxs.size(); ++g) {
          // add x[idxs[g]] times the image of that generator
          for (std::size_t h = 0; h < idxs.size(); ++h)
            img[idxs[h]] = (img[idxs[h]] + x[idxs[g]] * tuple[g][h]) % T.orders()[idxs[h]];
        }
      }
      perm[idx] = D.elem_index(img);
    }
    perms.push_back(std::move(perm));
    int carry = 0;
    while (carry < static_cast<int>(part_at.size())) {
      if (++part_at[carry] < static_cast<int>(part_autos[carry].size())) break;
      part_at[carry] = 0;
      ++carry;
    }
    if (carry == static_cast<int>(part_at.size())) break;
  }
  return perms;
}

}  // namespace detail

inline GroupAction GDAlgebra::weyl_group() const {
  int n = carrier_size();
  if (label_.family == GDFamily::ComplexPauli) {
    std::vector<Perm> gens = detail::aut_beta_perms(*this);
    if (!two_elementary()) {
      // degree inversion on the first coordinate of every pair
      Perm tau(n);
      for (int idx = 0; idx < n; ++idx) {
        AbElem x = elem_at(idx);
        for (std::size_t j = 0; j < label_.ells.size(); ++j)
          x[2 * j] = (T_.orders()[2 * j] - x[2 * j]) % T_.orders()[2 * j];
        tau[idx] = elem_index(x);
      }
      gens.push_back(std::move(tau));
    }
    return GroupAction(n, std::move(gens), "support of " + label_.str());
  }
  // 2-elementary families: the stabilizer of the square-class form
  int d = T_.torsion_rank();
  std::vector<int> table(std::size_t(1) << d);
  for (int idx = 0; idx < n; ++idx) {
    AbElem x = elem_at(idx);
    table[idx] = mu(x) < 0 ? 1 : 0;
  }
  QuadSpace2 space(d, table);
  std::vector<Perm> gens;
  if (d <= kIsometryFilterDim) {
    for (const GF2Matrix& m : isometry_matrices_by_filter(space, Preserve::Quad))
      gens.push_back(detail::perm_of_matrix(m));
  } else {
    auto rad = space.radical();
    if (rad.size() == 1) {
      for (const GF2Matrix& m : isometry_generators(space, Preserve::Quad))
        gens.push_back(detail::perm_of_matrix(m));
    } else if (rad.size() == 2 && space.quad(rad[1]) == 1) {
      // transvections still generate: the group is Sp of the quotient
      for (const GF2Matrix& m : isometry_generators(space, Preserve::Quad))
        gens.push_back(detail::perm_of_matrix(m));
    } else if (rad.size() == 2 && space.quad(rad[1]) == 0) {
      // lift the quotient isometries over the radical line and add the
      // radical translations u -> u + phi(u) f
      gf2vec f = rad[1];
      int fbit = __builtin_ctz(f);
      if (f != (gf2vec(1) << fbit))
        throw std::logic_error("radical generator is not a coordinate");
      std::vector<int> vbits;
      for (int b = 0; b < d; ++b)
        if (b != fbit) vbits.push_back(b);
      if (static_cast<int>(vbits.size()) > kIsometryFilterDim)
        throw std::invalid_argument("support too large for the singular case");
      QuadSpace2 vspace = QuadSpace2::from_form(static_cast<int>(vbits.size()), [&](gf2vec u) {
        gf2vec lifted = 0;
        for (std::size_t b = 0; b < vbits.size(); ++b)
          if ((u >> b) & 1) lifted |= gf2vec(1) << vbits[b];
        return space.quad(lifted);
      });
      for (const GF2Matrix& g : isometry_matrices_by_filter(vspace, Preserve::Quad)) {
        GF2Matrix m = GF2Matrix::identity(d);
        for (std::size_t cj = 0; cj < vbits.size(); ++cj)
          for (std::size_t ci = 0; ci < vbits.size(); ++ci)
            m.set(vbits[ci], vbits[cj], g.get(static_cast<int>(ci), static_cast<int>(cj)));
        gens.push_back(detail::perm_of_matrix(m));
      }
      for (std::size_t b = 0; b < vbits.size(); ++b) {
        GF2Matrix m = GF2Matrix::identity(d);
        m.set(fbit, vbits[b], 1);
        gens.push_back(detail::perm_of_matrix(m));
      }
    } else {
      throw std::logic_error("unexpected radical structure");
    }
  }
  if (gens.empty()) gens.push_back(perm_identity(n));
  return GroupAction(n, std::move(gens), "support of " + label_.str());
}

}  // namespace grady
