#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "grady/gf2.hpp"
#include "grady/group_action.hpp"
#include "grady/isometry.hpp"
#include "grady/quadspace.hpp"

using namespace grady;

namespace {

QuadSpace2 plane_plus() {
  // Q(i,j) = ij on GF(2)^2: the split hyperbolic plane
  return QuadSpace2::from_form(2, [](gf2vec x) { return (x & 1) & ((x >> 1) & 1); });
}

QuadSpace2 plane_minus() {
  // Q(i,j) = ij + i^2 + j^2
  return QuadSpace2::from_form(2, [](gf2vec x) {
    int i = x & 1, j = (x >> 1) & 1;
    return (i * j + i + j) & 1;
  });
}

QuadSpace2 hyperbolic(int m, bool minus_type = false) {
  // sum of m hyperbolic planes; minus type flips the last plane
  return QuadSpace2::from_form(2 * m, [=](gf2vec x) {
    int q = 0;
    for (int r = 0; r < m; ++r) {
      int i = (x >> (2 * r)) & 1, j = (x >> (2 * r + 1)) & 1;
      q ^= i & j;
      if (minus_type && r == m - 1) q ^= i ^ j;
    }
    return q;
  });
}

QuadSpace2 pairing_only(int two_m) {
  GF2Matrix gram(two_m, two_m);
  for (int r = 0; r < two_m / 2; ++r) {
    gram.set(2 * r, 2 * r + 1, 1);
    gram.set(2 * r + 1, 2 * r, 1);
  }
  return QuadSpace2(two_m, gram);
}

}  // namespace

TEST_CASE("polarization of basic forms") {
  SECTION("zero form on dim 2 polarizes to zero") {
    auto s = QuadSpace2::from_form(2, [](gf2vec) { return 0; });
    GF2Matrix p = polarize(s);
    CHECK(p.row[0] == 0);
    CHECK(p.row[1] == 0);
  }
  SECTION("split plane gives the standard symplectic pairing") {
    auto s = plane_plus();
    CHECK(s.pairing(1, 2) == 1);
    CHECK(s.pairing(1, 1) == 0);
    CHECK(s.pairing(2, 2) == 0);
  }
  SECTION("adding squares does not change the polarization") {
    CHECK(plane_plus().gram() == plane_minus().gram());
  }
  SECTION("polarization law holds exhaustively up to dim 8") {
    for (int m = 1; m <= 4; ++m) {
      auto s = hyperbolic(m);
      for (gf2vec x = 0; x < (gf2vec(1) << s.dim()); ++x)
        for (gf2vec y = 0; y < (gf2vec(1) << s.dim()); ++y)
          REQUIRE(((s.quad(x ^ y) ^ s.quad(x) ^ s.quad(y)) & 1) == s.pairing(x, y));
    }
  }
}

TEST_CASE("arf invariant by majority count") {
  CHECK(arf(QuadSpace2::from_form(0, [](gf2vec) { return 0; })) == +1);
  CHECK(arf(plane_plus()) == +1);   // values {0,0,0,1}
  CHECK(arf(plane_minus()) == -1);  // values {0,1,1,1}
  CHECK(arf(hyperbolic(2)) == +1);
  CHECK(arf(hyperbolic(2, true)) == -1);
  CHECK(arf(hyperbolic(3)) == +1);
  CHECK(arf(hyperbolic(3, true)) == -1);

  SECTION("degenerate polarization is rejected") {
    auto s = QuadSpace2::from_form(1, [](gf2vec x) { return int(x & 1); });
    CHECK_THROWS_AS(arf(s), std::invalid_argument);
  }
}

TEST_CASE("isometry group orders at dim 2") {
  CHECK(isometry_group(plane_plus(), Preserve::Quad).order() == 2);
  CHECK(isometry_group(plane_minus(), Preserve::Quad).order() == 6);
  CHECK(isometry_group(pairing_only(2), Preserve::PairingOnly).order() == 6);
}

TEST_CASE("isometry group orders at dim 4: filter vs generator closure") {
  struct Case {
    QuadSpace2 space;
    Preserve preserve;
    std::uint64_t expect;
  };
  // Expected orders from the classical product formulas, checked against the
  // exhaustive GL filter and (except O+(4,2)) transvection closure.
  Case cases[] = {
      {pairing_only(4), Preserve::PairingOnly, sp_order(4)},
      {hyperbolic(2), Preserve::Quad, o_order(4, +1)},
      {hyperbolic(2, true), Preserve::Quad, o_order(4, -1)},
  };
  CHECK(sp_order(4) == 720);
  CHECK(o_order(4, +1) == 72);
  CHECK(o_order(4, -1) == 120);
  for (const auto& c : cases) {
    auto filtered = isometry_matrices_by_filter(c.space, c.preserve);
    CHECK(filtered.size() == c.expect);
    CHECK(isometry_group(c.space, c.preserve).order() == c.expect);
  }
  SECTION("transvection closure agrees for Sp(4,2) and O-(4,2)") {
    for (auto pr : {Preserve::PairingOnly, Preserve::Quad}) {
      QuadSpace2 s = (pr == Preserve::PairingOnly) ? pairing_only(4) : hyperbolic(2, true);
      std::vector<Perm> gens;
      for (const auto& m : isometry_generators(s, pr))
        gens.push_back(detail::perm_of_matrix(m));
      GroupAction bfs(1 << s.dim(), gens);
      CHECK(bfs.order() == isometry_group(s, pr).order());
      CHECK(bfs.elements().size() == bfs.order());
    }
  }
  SECTION("O+(4,2) transvections generate a proper subgroup") {
    QuadSpace2 s = hyperbolic(2);
    std::vector<Perm> gens;
    for (const auto& m : isometry_generators(s, Preserve::Quad))
      gens.push_back(detail::perm_of_matrix(m));
    CHECK(GroupAction(1 << s.dim(), gens).order() < 72);
  }
}

TEST_CASE("dim 6 groups: transvection closure matches the order formulas") {
  CHECK(isometry_group(pairing_only(6), Preserve::PairingOnly).order() == sp_order(6));
  CHECK(isometry_group(hyperbolic(3), Preserve::Quad).order() == o_order(6, +1));
  CHECK(isometry_group(hyperbolic(3, true), Preserve::Quad).order() == o_order(6, -1));
}

TEST_CASE("arf is constant on isometry orbits (dim <= 4)") {
  for (auto space : {hyperbolic(1), hyperbolic(1, true), hyperbolic(2), hyperbolic(2, true)}) {
    int a = arf(space);
    for (const auto& m : isometry_matrices_by_filter(space, Preserve::Quad)) {
      auto moved = QuadSpace2::from_form(
          space.dim(), [&](gf2vec x) { return space.quad(gf2_inverse(m).apply(x)); });
      REQUIRE(arf(moved) == a);
    }
  }
}

TEST_CASE("affine isometry group") {
  SECTION("dim 0 is trivial") {
    auto s = QuadSpace2::from_form(0, [](gf2vec) { return 0; });
    CHECK(affine_isometry_group(s).order() == 1);
  }
  SECTION("split plane: order 2^2 * 2 = 8") {
    CHECK(affine_isometry_group(plane_plus()).order() == 8);
  }
  SECTION("translations make the action transitive") {
    for (auto s : {plane_plus(), plane_minus(), hyperbolic(2)}) {
      auto a = affine_isometry_group(s);
      CHECK(a.point_orbit(0).size() == a.carrier_size());
    }
  }
}

TEST_CASE("canonical multisets under the dim-2 orthogonal actions") {
  // carrier points are the vectors 0=e, 1=a, 2=b, 3=c of GF(2)^2
  auto oplus = isometry_group(plane_plus(), Preserve::Quad);    // permutes a and b
  auto ominus = isometry_group(plane_minus(), Preserve::Quad);  // permutes a, b, c

  SECTION("pairs in T+ = {e,a,b} under O+(2,2): four orbits") {
    std::set<Multiset> canon;
    for (int x : {0, 1, 2})
      for (int y : {0, 1, 2})
        if (x <= y) canon.insert(canonical_multiset({x, y}, oplus));
    CHECK(canon == std::set<Multiset>{{0, 0}, {0, 1}, {1, 1}, {1, 2}});
  }
  SECTION("multisets are unordered") {
    CHECK(canonical_multiset({1, 2}, oplus) == canonical_multiset({2, 1}, oplus));
  }
  SECTION("size-4 multisets in T- = {a,b,c} under O-(2,2): four orbits") {
    std::set<Multiset> canon;
    for (int x = 1; x <= 3; ++x)
      for (int y = x; y <= 3; ++y)
        for (int z = y; z <= 3; ++z)
          for (int w = z; w <= 3; ++w) canon.insert(canonical_multiset({x, y, z, w}, ominus));
    CHECK(canon == std::set<Multiset>{{1, 1, 1, 1}, {1, 1, 1, 2}, {1, 1, 2, 2}, {1, 1, 2, 3}});
  }
  SECTION("orbit classes partition the multisets (carrier <= 8, size <= 4)") {
    auto space = hyperbolic(1, true);
    auto action = isometry_group(space, Preserve::Quad);
    std::map<Multiset, Multiset> rep;
    std::vector<Multiset> all;
    int n = action.carrier_size();
    for (int x = 0; x < n; ++x)
      for (int y = x; y < n; ++y)
        for (int z = y; z < n; ++z) all.push_back({x, y, z});
    std::size_t covered = 0;
    std::set<Multiset> canon_set;
    MultisetCanonicalizer canon(action);
    for (const auto& m : all) canon_set.insert(canon.canonical(m));
    for (const auto& c : canon_set) covered += canon.orbit_size(c);
    CHECK(covered == all.size());
  }
}

TEST_CASE("carrier mismatch is rejected") {
  auto a = isometry_group(plane_plus(), Preserve::Quad);
  CHECK_THROWS_AS(canonical_multiset({7}, a), std::invalid_argument);
}

#include "grady/fin_ab_group.hpp"
#include "grady/flag.hpp"
#include "grady/symplectic_lift.hpp"

namespace {

// standard symplectic bicharacter on a product of Z_d x Z_d pairs, as an
// exponent of zeta_N with N the lcm of the pair orders
struct PairedBeta {
  std::vector<std::int64_t> pair_orders;
  std::int64_t N;
  std::int64_t operator()(const AbElem& x, const AbElem& y) const {
    std::int64_t e = 0;
    for (std::size_t p = 0; p < pair_orders.size(); ++p) {
      std::int64_t d = pair_orders[p];
      std::int64_t v = ((x[2 * p] * y[2 * p + 1] - x[2 * p + 1] * y[2 * p]) % d + d) % d;
      e = (e + v * (N / d)) % N;
    }
    return e;
  }
};

FinAbGroup paired_group(const std::vector<std::int64_t>& pair_orders) {
  std::vector<std::int64_t> orders;
  for (auto d : pair_orders) { orders.push_back(d); orders.push_back(d); }
  return FinAbGroup(orders, 0);
}

std::int64_t lcm_of(const std::vector<std::int64_t>& v) {
  std::int64_t l = 1;
  for (auto d : v) l = std::lcm(l, d);
  return l;
}

}  // namespace

TEST_CASE("flag of the 2-torsion layers") {
  SECTION("odd order gives the empty flag") {
    auto t = paired_group({3});
    PairedBeta beta{{3}, 3};
    auto f = build_flag(t, beta, 3);
    CHECK(f.dim == 0);
    CHECK(f.length() == 0);
  }
  SECTION("Z4^2 gives a single symplectic plane at level 2") {
    auto t = paired_group({4});
    PairedBeta beta{{4}, 4};
    auto f = build_flag(t, beta, 4);
    CHECK(f.dim == 2);
    CHECK(f.levels == std::vector<int>{2});
    CHECK(gf2_rank(f.quotient_form.at(2).row) == 2);
  }
  SECTION("Z2^2 x Z4^2 gives a two-step flag with symplectic quotients") {
    auto t = paired_group({2, 4});
    PairedBeta beta{{2, 4}, 4};
    auto f = build_flag(t, beta, 4);
    CHECK(f.dim == 4);
    CHECK(f.levels == std::vector<int>{1, 2});
    CHECK(gf2_rank(f.quotient_form.at(1).row) == 2);
    CHECK(gf2_rank(f.quotient_form.at(2).row) == 2);
  }
  SECTION("degenerate bicharacter is rejected") {
    auto t = paired_group({2});
    auto zero = [](const AbElem&, const AbElem&) { return std::int64_t(0); };
    CHECK_THROWS_AS(build_flag(t, zero, 2), std::invalid_argument);
  }
}

TEST_CASE("flag stabilizer orders") {
  SECTION("Z4^2: Sp(2,2) of order 6") {
    auto t = paired_group({4});
    PairedBeta beta{{4}, 4};
    auto st = flag_stabilizer(build_flag(t, beta, 4));
    CHECK(st.order() == 6);
  }
  SECTION("Z2^2 x Z4^2: order 576") {
    auto t = paired_group({2, 4});
    PairedBeta beta{{2, 4}, 4};
    auto f = build_flag(t, beta, 4);
    auto st = flag_stabilizer(f);
    CHECK(st.order() == 576);
    CHECK(flag_stabilizer_order_formula(f) == 576);
  }
  SECTION("single-step flag equals the full symplectic group") {
    auto t = paired_group({2, 2});
    PairedBeta beta{{2, 2}, 2};
    auto st = flag_stabilizer(build_flag(t, beta, 2));
    CHECK(st.order() == sp_order(4));
  }
}

TEST_CASE("automorphism image equals the flag stabilizer") {
  struct Case {
    std::vector<std::int64_t> pairs;
  };
  for (const auto& c : {Case{{4}}, Case{{8}}, Case{{2, 4}}, Case{{2, 2}}, Case{{3, 4}}}) {
    auto t = paired_group(c.pairs);
    std::int64_t n = lcm_of(c.pairs);
    PairedBeta beta{c.pairs, n};
    auto f = build_flag(t, beta, n);
    auto image = aut_beta_image(t, beta, n);
    auto st = flag_stabilizer(f);
    // compare as sets of permutations of the carrier
    std::set<Perm> img_set;
    for (const auto& m : image) img_set.insert(detail::perm_of_matrix(m));
    auto elems = st.elements();
    std::set<Perm> st_set(elems.begin(), elems.end());
    INFO("pairs " << c.pairs[0]);
    REQUIRE(img_set == st_set);
  }
}

TEST_CASE("symplectic lift to 2-adic precision") {
  SECTION("identity lifts to the identity") {
    auto a = lift_symplectic({{1, 0}, {0, 1}}, 4);
    CHECK(a == ModMat::identity(2, 16));
  }
  SECTION("shear mod 2 lifts to mod 4") {
    auto a = lift_symplectic({{1, 1}, {0, 1}}, 2);
    CHECK(is_symplectic(a));
    CHECK(a.at(0, 0) % 2 == 1);
    CHECK(a.at(0, 1) % 2 == 1);
    CHECK(a.at(1, 0) % 2 == 0);
    CHECK(a.at(1, 1) % 2 == 1);
  }
  SECTION("random Sp(4,2) elements lift mod 8 and mod 16") {
    QuadSpace2 s = [] {
      GF2Matrix gram(4, 4);
      gram.set(0, 2, 1); gram.set(2, 0, 1);
      gram.set(1, 3, 1); gram.set(3, 1, 1);
      return QuadSpace2(4, gram);
    }();
    // carrier pairing laid out for J = [[0,I],[-I,0]] block order
    auto sp = isometry_matrices_by_filter(s, Preserve::PairingOnly);
    REQUIRE(sp.size() == 720);
    std::mt19937 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
      const GF2Matrix& g = sp[rng() % sp.size()];
      int m = 2 + int(rng() % 3);
      std::vector<std::vector<int>> rows(4, std::vector<int>(4));
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rows[i][j] = g.get(i, j);
      auto lift = lift_symplectic(rows, m);
      REQUIRE(is_symplectic(lift));
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) REQUIRE(lift.at(i, j) % 2 == std::uint64_t(g.get(i, j)));
    }
  }
  SECTION("non-symplectic input is rejected") {
    CHECK_THROWS_AS(lift_symplectic({{1, 1}, {1, 1}}, 3), std::invalid_argument);
  }
}

TEST_CASE("witt extension at dim <= 4: equal invariants imply one orbit") {
  // ordered tuples with equal Q-values, equal Gram matrices and equal
  // dependency pattern lie in one orbit of the isometry group
  for (bool minus : {false, true}) {
    QuadSpace2 s = [&] {
      return QuadSpace2::from_form(4, [&](gf2vec x) {
        int i1 = x & 1, j1 = (x >> 1) & 1, i2 = (x >> 2) & 1, j2 = (x >> 3) & 1;
        int q = (i1 & j1) ^ (i2 & j2);
        if (minus) q ^= i2 ^ j2;
        return q;
      });
    }();
    auto group = isometry_group(s, Preserve::Quad);
    auto elems = group.elements();
    // classify ordered pairs (u,v) by invariants, then check orbit counts
    std::map<std::array<int, 4>, std::set<std::pair<int, int>>> classes;
    int n = 1 << 4;
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        int dep = (u == 0 ? 1 : 0) | (v == 0 ? 2 : 0) | (u == v ? 4 : 0);
        classes[{s.quad(u), s.quad(v), s.pairing(u, v), dep}].insert({u, v});
      }
    for (const auto& [inv, members] : classes) {
      // orbit of one member must be the whole class
      std::set<std::pair<int, int>> orbit;
      auto seed = *members.begin();
      for (const auto& g : elems) orbit.insert({g[seed.first], g[seed.second]});
      REQUIRE(orbit == members);
    }
  }
}
