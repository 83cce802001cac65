#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "grady/smith.hpp"

namespace grady {

// Element of a finitely generated abelian group: exponents on the torsion
// generators (reduced mod their orders) followed by free coordinates.
using AbElem = std::vector<std::int64_t>;

// A finitely generated abelian group presented by a list of cyclic orders
// (working basis, not necessarily a divisibility chain) plus a free rank.
// The canonical isomorphism type is obtained from invariant_factors().
class FinAbGroup {
 public:
  FinAbGroup() = default;
  FinAbGroup(std::vector<std::int64_t> orders, int free_rank)
      : orders_(std::move(orders)), free_rank_(free_rank) {
    for (std::int64_t d : orders_)
      if (d < 2) throw std::invalid_argument("cyclic orders must be >= 2");
  }
  static FinAbGroup trivial() { return FinAbGroup({}, 0); }

  const std::vector<std::int64_t>& orders() const { return orders_; }
  int torsion_rank() const { return static_cast<int>(orders_.size()); }
  int free_rank() const { return free_rank_; }
  int coords() const { return torsion_rank() + free_rank_; }
  bool is_torsion() const { return free_rank_ == 0; }

  std::uint64_t torsion_size() const {
    std::uint64_t n = 1;
    for (std::int64_t d : orders_) n *= static_cast<std::uint64_t>(d);
    return n;
  }

  AbElem zero() const { return AbElem(coords(), 0); }

  AbElem reduce(AbElem x) const {
    check(x);
    for (int i = 0; i < torsion_rank(); ++i) {
      x[i] %= orders_[i];
      if (x[i] < 0) x[i] += orders_[i];
    }
    return x;
  }

  AbElem add(const AbElem& a, const AbElem& b) const {
    check(a);
    check(b);
    AbElem out(coords());
    for (int i = 0; i < coords(); ++i) out[i] = checked_add(a[i], b[i]);
    return reduce(std::move(out));
  }
  AbElem neg(const AbElem& a) const {
    AbElem out(coords());
    for (int i = 0; i < coords(); ++i) out[i] = checked_sub(0, a[i]);
    return reduce(std::move(out));
  }
  AbElem sub(const AbElem& a, const AbElem& b) const { return add(a, neg(b)); }
  AbElem scale(std::int64_t n, const AbElem& a) const {
    AbElem out(coords());
    for (int i = 0; i < coords(); ++i) out[i] = checked_mul(n, a[i]);
    return reduce(std::move(out));
  }
  bool is_zero(const AbElem& a) const {
    return std::all_of(a.begin(), a.end(), [](std::int64_t v) { return v == 0; });
  }

  std::int64_t element_order(const AbElem& a) const {
    if (!is_torsion_elem(a)) throw std::domain_error("element has infinite order");
    std::int64_t ord = 1;
    for (int i = 0; i < torsion_rank(); ++i) {
      if (a[i] == 0) continue;
      std::int64_t d = orders_[i] / std::gcd(orders_[i], a[i]);
      ord = std::lcm(ord, d);
    }
    return ord;
  }
  bool is_torsion_elem(const AbElem& a) const {
    for (int i = torsion_rank(); i < coords(); ++i)
      if (a[i] != 0) return false;
    return true;
  }

  // All torsion elements (free coordinates zero). Desk scale only.
  std::vector<AbElem> torsion_elements() const {
    std::vector<AbElem> out{zero()};
    for (int i = 0; i < torsion_rank(); ++i) {
      std::vector<AbElem> next;
      for (const AbElem& x : out)
        for (std::int64_t v = 0; v < orders_[i]; ++v) {
          AbElem y = x;
          y[i] = v;
          next.push_back(std::move(y));
        }
      out = std::move(next);
    }
    return out;
  }

  // Canonical isomorphism type: invariant factors d1 | d2 | ... (each >= 2).
  std::vector<std::int64_t> invariant_factors() const {
    if (orders_.empty()) return {};
    int n = torsion_rank();
    IntMat rel(n, std::vector<std::int64_t>(n, 0));
    for (int i = 0; i < n; ++i) rel[i][i] = orders_[i];
    auto s = smith(rel);
    std::vector<std::int64_t> factors;
    for (std::int64_t d : s.invariant_factors)
      if (d > 1) factors.push_back(d);
    return factors;
  }

  // Label such as "Z2^3 x Z4 x Z^2"; "1" for the trivial group.
  std::string iso_label() const {
    auto factors = invariant_factors();
    // group equal prime-power factors: print as Z{d} or Z{d}^k, splitting
    // composite invariant factors into prime powers for readability
    std::map<std::int64_t, int> counts;
    for (std::int64_t d : factors) {
      std::int64_t m = d;
      for (std::int64_t p = 2; p * p <= m; ++p)
        while (m % p == 0) {
          std::int64_t pk = p;
          while (m % (pk * p) == 0) pk *= p;
          counts[pk]++;
          m /= pk;
        }
      if (m > 1) counts[m]++;
    }
    std::string s;
    for (const auto& [pk, k] : counts) {
      if (!s.empty()) s += " x ";
      s += "Z" + std::to_string(pk);
      if (k > 1) s += "^" + std::to_string(k);
    }
    if (free_rank_ > 0) {
      if (!s.empty()) s += " x ";
      s += free_rank_ == 1 ? "Z" : "Z^" + std::to_string(free_rank_);
    }
    return s.empty() ? "1" : s;
  }

  // Isomorphism-type equality.
  bool same_iso_type(const FinAbGroup& other) const {
    return free_rank_ == other.free_rank_ && invariant_factors() == other.invariant_factors();
  }

  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) {
    return a.orders_ == b.orders_ && a.free_rank_ == b.free_rank_;
  }

 private:
  void check(const AbElem& a) const {
    if (static_cast<int>(a.size()) != coords())
      throw std::invalid_argument("element has wrong coordinate count");
  }

  std::vector<std::int64_t> orders_;
  int free_rank_ = 0;
};

// Subgroup operators on a finite abelian group (desk scale: enumerates
// elements). T^[n] is the image of x -> nx, T_[n] its kernel.
inline std::vector<AbElem> power_subgroup(const FinAbGroup& T, std::int64_t n) {
  std::set<AbElem> out;
  for (const AbElem& x : T.torsion_elements()) out.insert(T.scale(n, x));
  return {out.begin(), out.end()};
}

inline std::vector<AbElem> torsion_kernel(const FinAbGroup& T, std::int64_t n) {
  std::vector<AbElem> out;
  for (const AbElem& x : T.torsion_elements())
    if (T.is_zero(T.scale(n, x))) out.push_back(x);
  return out;
}

// Isomorphism type of T / T^[n] via the quotient presentation.
inline std::vector<std::int64_t> quotient_by_power_iso(const FinAbGroup& T, std::int64_t n) {
  int r = T.torsion_rank();
  IntMat rel;
  for (int i = 0; i < r; ++i) {
    std::vector<std::int64_t> row(r, 0);
    row[i] = T.orders()[i];
    rel.push_back(row);
    row.assign(r, 0);
    row[i] = n;
    rel.push_back(row);
  }
  // cokernel via smith of the transpose
  IntMat a(r, std::vector<std::int64_t>(rel.size(), 0));
  for (std::size_t i = 0; i < rel.size(); ++i)
    for (int j = 0; j < r; ++j) a[j][i] = rel[i][j];
  auto s = smith(a);
  std::vector<std::int64_t> factors;
  for (std::int64_t d : s.invariant_factors)
    if (d > 1) factors.push_back(d);
  return factors;
}

// Orthogonal complement of a subgroup with respect to an alternating
// bicharacter given as an exponent table: beta(s,t) = zeta_N^{b(s,t)}.
// Rejects degenerate bicharacters (nontrivial radical).
template <typename BetaExp>
std::vector<AbElem> perp_subgroup(const FinAbGroup& T, BetaExp&& b, std::int64_t N,
                                  const std::vector<AbElem>& subgroup) {
  auto all = T.torsion_elements();
  for (const AbElem& s : all) {
    bool radical = true;
    for (const AbElem& t : all)
      if (b(s, t) % N != 0) { radical = false; break; }
    if (radical && !T.is_zero(s))
      throw std::invalid_argument("bicharacter is degenerate");
  }
  std::vector<AbElem> out;
  for (const AbElem& s : all) {
    bool ok = true;
    for (const AbElem& t : subgroup)
      if (b(s, t) % N != 0) { ok = false; break; }
    if (ok) out.push_back(s);
  }
  return out;
}

// Isomorphism type (invariant factors) of a finite abelian group given by a
// full list of its elements, read off from the order statistics.
inline std::vector<std::int64_t> subgroup_iso_type(const FinAbGroup& g,
                                                   const std::vector<AbElem>& elems) {
  std::uint64_t n = elems.size();
  std::vector<std::int64_t> primes;
  std::uint64_t m = n;
  for (std::int64_t p = 2; static_cast<std::uint64_t>(p) * p <= m; ++p)
    if (m % p == 0) {
      primes.push_back(p);
      while (m % p == 0) m /= p;
    }
  if (m > 1) primes.push_back(static_cast<std::int64_t>(m));

  std::vector<std::int64_t> orders;
  orders.reserve(elems.size());
  for (const AbElem& x : elems) orders.push_back(g.element_order(x));

  // per prime: multiset of cyclic prime-power orders, largest first
  std::vector<std::vector<std::int64_t>> columns;
  for (std::int64_t p : primes) {
    // e_k = log_p #{x : p^k x = 0}; levels with lambda_i >= k have e_k - e_{k-1}
    std::vector<int> e{0};
    for (std::int64_t pk = p;; pk = checked_mul(pk, p)) {
      std::uint64_t cnt = 0;
      for (std::int64_t o : orders)
        if (pk % o == 0) ++cnt;
      int ek = 0;
      while (cnt > 1) {
        if (cnt % p != 0) throw std::logic_error("element counts are not p-power layered");
        cnt /= p;
        ++ek;
      }
      if (ek == e.back()) break;  // saturated: whole p-part killed
      e.push_back(ek);
    }
    std::vector<std::int64_t> powers;  // largest first
    for (int k = static_cast<int>(e.size()) - 1; k >= 1; --k) {
      int at_least_k = e[k] - e[k - 1];
      int at_least_k1 = (k + 1 < static_cast<int>(e.size())) ? e[k + 1] - e[k] : 0;
      int exactly_k = at_least_k - at_least_k1;
      std::int64_t pk = 1;
      for (int j = 0; j < k; ++j) pk *= p;
      for (int rep = 0; rep < exactly_k; ++rep) powers.push_back(pk);
    }
    columns.push_back(std::move(powers));
  }
  std::size_t rows = 0;
  for (auto& col : columns) rows = std::max(rows, col.size());
  std::vector<std::int64_t> factors(rows, 1);
  for (auto& col : columns)
    for (std::size_t i = 0; i < col.size(); ++i)
      factors[rows - 1 - i] = checked_mul(factors[rows - 1 - i], col[i]);
  return factors;  // ascending divisibility chain
}

}  // namespace grady
