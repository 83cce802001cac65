#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace grady {

using Perm = std::vector<int>;  // perm[i] = image of carrier point i

inline Perm perm_identity(int n) {
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

inline Perm perm_compose(const Perm& a, const Perm& b) {
  // (a*b)(x) = a(b(x))
  Perm c(a.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
  return c;
}

inline Perm perm_inverse(const Perm& a) {
  Perm inv(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) inv[a[i]] = static_cast<int>(i);
  return inv;
}

inline bool perm_is_bijection(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (int x : p) {
    if (x < 0 || x >= static_cast<int>(p.size()) || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

// A finite group acting on a carrier {0,...,n-1}, given by permutation
// generators. The order is computed on demand by a point-stabilizer chain.
class GroupAction {
 public:
  GroupAction() = default;
  GroupAction(int carrier_size, std::vector<Perm> generators, std::string carrier_desc = "")
      : n_(carrier_size), gens_(std::move(generators)), desc_(std::move(carrier_desc)) {
    for (const Perm& g : gens_) {
      if (static_cast<int>(g.size()) != n_ || !perm_is_bijection(g))
        throw std::invalid_argument("generator is not a bijection of the carrier");
    }
  }

  int carrier_size() const { return n_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const std::string& carrier_desc() const { return desc_; }

  // Group order via a stabilizer chain (orbit sizes times recursive order).
  std::uint64_t order() const {
    if (!order_) order_ = schreier_sims_order(n_, gens_);
    return *order_;
  }

  // Full element enumeration by breadth-first closure; intended for small
  // groups (used by the cross-check tests and subgroup equality).
  std::vector<Perm> elements(std::uint64_t limit = 5'000'000) const {
    std::set<Perm> seen;
    std::vector<Perm> queue{perm_identity(n_)};
    seen.insert(queue[0]);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const Perm& g : gens_) {
        Perm next = perm_compose(g, queue[head]);
        if (seen.insert(next).second) {
          queue.push_back(next);
          if (seen.size() > limit) throw std::runtime_error("group closure exceeds limit");
        }
      }
    }
    return queue;
  }

  std::vector<int> point_orbit(int x) const {
    std::vector<char> seen(n_, 0);
    std::vector<int> orbit{x};
    seen[x] = 1;
    for (std::size_t head = 0; head < orbit.size(); ++head)
      for (const Perm& g : gens_) {
        int y = g[orbit[head]];
        if (!seen[y]) { seen[y] = 1; orbit.push_back(y); }
      }
    std::sort(orbit.begin(), orbit.end());
    return orbit;
  }

 private:
  static bool perm_is_id(const Perm& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] != static_cast<int>(i)) return false;
    return true;
  }

  // Deterministic Schreier-Sims with sifting: maintains a stabilizer chain
  // and adds sifted residues until every Schreier generator sifts through.
  struct StabChain {
    int n;
    std::vector<int> base;
    std::vector<std::vector<Perm>> sgens;       // level i: fix base[0..i-1]
    std::vector<std::map<int, Perm>> trans;     // orbit transversals

    explicit StabChain(int carrier) : n(carrier) {}

    void rebuild_orbit(int i) {
      trans[i].clear();
      trans[i][base[i]] = perm_identity(n);
      std::vector<int> queue{base[i]};
      for (std::size_t head = 0; head < queue.size(); ++head) {
        int x = queue[head];
        for (const Perm& g : sgens[i]) {
          int y = g[x];
          if (!trans[i].count(y)) {
            trans[i][y] = perm_compose(g, trans[i].at(x));
            queue.push_back(y);
          }
        }
      }
    }

    // Reduce g through levels >= lev; returns residue and stuck level, or
    // level -1 for a clean sift to the identity.
    std::pair<Perm, int> sift(Perm g, int lev) const {
      for (int i = lev; i < static_cast<int>(base.size()); ++i) {
        int x = g[base[i]];
        auto it = trans[i].find(x);
        if (it == trans[i].end()) return {std::move(g), i};
        g = perm_compose(perm_inverse(it->second), g);
      }
      if (perm_is_id(g)) return {std::move(g), -1};
      return {std::move(g), static_cast<int>(base.size())};
    }

    void add_generator(Perm g, int lev) {
      if (lev == static_cast<int>(base.size())) {
        int pt = -1;
        for (int i = 0; i < n; ++i)
          if (g[i] != i) { pt = i; break; }
        base.push_back(pt);
        sgens.emplace_back();
        trans.emplace_back();
      }
      sgens[lev].push_back(std::move(g));
      rebuild_orbit(lev);
    }
  };

  static std::uint64_t schreier_sims_order(int n, const std::vector<Perm>& gens) {
    StabChain chain(n);
    for (const Perm& g : gens) {
      auto [h, lev] = chain.sift(g, 0);
      if (lev >= 0) chain.add_generator(std::move(h), lev);
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = 0; i < static_cast<int>(chain.base.size()) && !changed; ++i) {
        for (const auto& [x, ux] : chain.trans[i]) {
          for (const Perm& g : chain.sgens[i]) {
            Perm schreier = perm_compose(
                perm_inverse(chain.trans[i].at(g[x])), perm_compose(g, ux));
            auto [h, lev] = chain.sift(std::move(schreier), i + 1);
            if (lev >= 0) {
              chain.add_generator(std::move(h), lev);
              changed = true;
              break;
            }
          }
          if (changed) break;
        }
      }
    }
    std::uint64_t order = 1;
    for (const auto& t : chain.trans) order *= t.size();
    return order;
  }

  int n_ = 0;
  std::vector<Perm> gens_;
  std::string desc_;
  mutable std::optional<std::uint64_t> order_;
};

// Multisets over the carrier are kept as sorted point lists.
using Multiset = std::vector<int>;

inline Multiset apply_to_multiset(const Perm& g, const Multiset& m) {
  Multiset out;
  out.reserve(m.size());
  for (int x : m) out.push_back(g[x]);
  std::sort(out.begin(), out.end());
  return out;
}

// Canonical representative of the orbit of a multiset under the action:
// the lexicographic minimum over the whole orbit (breadth-first closure).
// Results are memoized per action instance.
class MultisetCanonicalizer {
 public:
  explicit MultisetCanonicalizer(const GroupAction& action) : action_(&action) {}

  Multiset canonical(Multiset m) const {
    std::sort(m.begin(), m.end());
    for (int x : m)
      if (x < 0 || x >= action_->carrier_size())
        throw std::invalid_argument("multiset point outside the carrier");
    auto it = cache_.find(m);
    if (it != cache_.end()) return it->second;
    std::set<Multiset> orbit;
    std::vector<Multiset> queue{m};
    orbit.insert(m);
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (const Perm& g : action_->generators()) {
        Multiset next = apply_to_multiset(g, queue[head]);
        if (orbit.insert(next).second) queue.push_back(next);
      }
    const Multiset& canon = *orbit.begin();
    for (const Multiset& x : orbit) cache_[x] = canon;
    return canon;
  }

  // Orbit size of the multiset (size of its closure).
  std::size_t orbit_size(Multiset m) const {
    std::sort(m.begin(), m.end());
    std::set<Multiset> orbit{m};
    std::vector<Multiset> queue{m};
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (const Perm& g : action_->generators()) {
        Multiset next = apply_to_multiset(g, queue[head]);
        if (orbit.insert(next).second) queue.push_back(next);
      }
    return orbit.size();
  }

 private:
  const GroupAction* action_;
  mutable std::map<Multiset, Multiset> cache_;
};

// Memoized canonicalizer pool keyed by (carrier size, generator list): the
// enumerators call this repeatedly with equal actions.
inline Multiset canonical_multiset(const Multiset& m, const GroupAction& action) {
  using Key = std::pair<int, std::vector<Perm>>;
  struct Entry {
    GroupAction action;
    MultisetCanonicalizer canon;
    explicit Entry(const GroupAction& a) : action(a), canon(action) {}
  };
  static std::map<Key, std::unique_ptr<Entry>> pool;
  Key key{action.carrier_size(), action.generators()};
  auto& slot = pool[key];
  if (!slot) slot = std::make_unique<Entry>(action);
  return slot->canon.canonical(m);
}

}  // namespace grady
