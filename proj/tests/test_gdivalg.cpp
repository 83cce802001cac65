#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "grady/gdalgebra.hpp"

using namespace grady;

namespace {

AbElem el(const GDAlgebra& d, std::initializer_list<std::int64_t> v) {
  AbElem x(v);
  return d.support().reduce(x);
}

}  // namespace

TEST_CASE("label parsing round-trips") {
  for (const char* s : {"D(2;+1)", "D(4;-1)", "D(3;R)", "D(3;C)", "D(2,4;C)", "D(5;+1)", "D(3;-1)"})
    CHECK(GDLabel::parse(s).str() == s);
  CHECK(GDLabel::parse("D(0;+1)").str() == "D(0;+1)");
  CHECK_THROWS_AS(GDLabel::parse("D(2;*1)"), std::invalid_argument);
  CHECK_THROWS_AS(GDLabel::parse("D(6;C)"), std::invalid_argument);   // 6 is not a prime power
  CHECK_THROWS_AS(GDLabel::parse("D(2;R)"), std::invalid_argument);   // even size with R tag
  CHECK_THROWS_AS(GDLabel::parse("D(0;-1)"), std::invalid_argument);
  CHECK_THROWS_AS(GDLabel::parse("M(2;+1)"), std::invalid_argument);
}

TEST_CASE("split real factor D(2;+1)") {
  auto d = GDAlgebra::build("D(2;+1)");
  AbElem e = el(d, {0, 0}), a = el(d, {1, 0}), b = el(d, {0, 1}), c = el(d, {1, 1});
  CHECK(d.support().torsion_size() == 4);
  SECTION("square classes") {
    CHECK(d.mu(e) == +1);
    CHECK(d.mu(a) == +1);
    CHECK(d.mu(b) == +1);
    CHECK(d.mu(c) == -1);
  }
  SECTION("anticommutation of the two generators") {
    CHECK(d.beta_sign(a, b) == -1);
    CHECK(d.beta_sign(a, a) == +1);
    CHECK(d.beta_sign(c, c) == +1);
  }
  SECTION("products X_a X_b = X_c and X_b X_a = -X_c") {
    auto xa = d.monomial(a), xb = d.monomial(b);
    auto ab = d.multiply(xa, xb);
    auto ba = d.multiply(xb, xa);
    CHECK(ab.degree == c);
    CHECK(ab.coeff == Cyc::one(d.field()));
    CHECK(ba.degree == c);
    CHECK(ba.coeff == -Cyc::one(d.field()));
  }
  SECTION("identity element is neutral") {
    auto xe = d.monomial(e);
    auto xc = d.monomial(c);
    CHECK(d.multiply(xe, xc).coeff == xc.coeff);
    CHECK(d.multiply(xc, xe).degree == c);
  }
  SECTION("transpose involution is orthogonal") {
    CHECK(d.involution_type() == InvolutionKind::Orthogonal);
  }
  SECTION("Weyl group permutes a and b: order 2") {
    CHECK(d.weyl_group().order() == 2);
  }
}

TEST_CASE("quaternion factor D(2;-1)") {
  auto d = GDAlgebra::build("D(2;-1)");
  AbElem a = el(d, {1, 0}), b = el(d, {0, 1}), c = el(d, {1, 1});
  CHECK(d.mu(a) == -1);
  CHECK(d.mu(b) == -1);
  CHECK(d.mu(c) == -1);
  CHECK(d.involution_type() == InvolutionKind::Symplectic);
  CHECK(d.weyl_group().order() == 6);
  SECTION("eta values match the standard conjugation") {
    CHECK(d.eta(el(d, {0, 0})) == +1);
    CHECK(d.eta(a) == -1);
    CHECK(d.eta(b) == -1);
    CHECK(d.eta(c) == -1);
  }
}

TEST_CASE("complex Pauli factor D(3;C)") {
  auto d = GDAlgebra::build("D(3;C)");
  CHECK(d.support().torsion_size() == 9);
  CHECK(d.root_order() == 12);  // contains both zeta_6 and i
  CHECK(d.conjugating());
  CHECK(d.involution_type() == InvolutionKind::SecondKind);
  SECTION("every basis element is fixed by the involution") {
    for (const AbElem& t : d.support().torsion_elements()) {
      auto x = d.monomial(t);
      auto px = d.phi0(x);
      CHECK(px.degree == x.degree);
      CHECK(px.coeff == x.coeff);
    }
  }
  SECTION("Weyl group is Aut(T,beta) extended by inversion: order 48") {
    auto w = d.weyl_group();
    CHECK(w.order() == 48);
  }
  SECTION("beta matches the determinant pairing into cube roots") {
    AbElem a = el(d, {1, 0}), b = el(d, {0, 1});
    std::int64_t e = d.beta_exp(a, b);
    // a primitive cube root of unity as an exponent of zeta_12
    CHECK(e % (d.root_order() / 3) == 0);
    CHECK(e != 0);
  }
}

TEST_CASE("split-center families") {
  SECTION("D(3;+1): central degree is skew under the involution") {
    auto d = GDAlgebra::build("D(3;+1)");
    AbElem f = el(d, {0, 0, 1});
    CHECK(d.eta(f) == -1);
    CHECK(d.mu(f) == +1);
    CHECK(d.involution_type() == InvolutionKind::Exchange);
    CHECK(d.center_support().size() == 2);
  }
  SECTION("D(3;-1): same center behavior over the quaternion part") {
    auto d = GDAlgebra::build("D(3;-1)");
    AbElem f = el(d, {0, 0, 1});
    CHECK(d.eta(f) == -1);
    CHECK(d.center_support().size() == 2);
  }
  SECTION("D(3;R): central element squares to -1") {
    auto d = GDAlgebra::build("D(3;R)");
    AbElem f = el(d, {0, 0, 1});
    CHECK(d.mu(f) == -1);
    CHECK(d.eta(f) == -1);
    CHECK(d.involution_type() == InvolutionKind::SecondKind);
    CHECK(d.center_support().size() == 2);
  }
}

TEST_CASE("cocycle identity holds exhaustively") {
  for (const char* label : {"D(2;+1)", "D(2;-1)", "D(4;+1)", "D(3;R)", "D(3;+1)", "D(3;-1)",
                            "D(3;C)", "D(2;C)", "D(4;C)", "D(2,2;C)"}) {
    auto d = GDAlgebra::build(label);
    if (d.support().torsion_size() > 64) continue;
    auto elems = d.support().torsion_elements();
    std::int64_t M = d.root_order();
    for (const AbElem& s : elems)
      for (const AbElem& t : elems)
        for (const AbElem& u : elems) {
          std::int64_t lhs = (d.sigma_exp(s, t) + d.sigma_exp(d.support().add(s, t), u)) % M;
          std::int64_t rhs = (d.sigma_exp(t, u) + d.sigma_exp(s, d.support().add(t, u))) % M;
          REQUIRE(lhs == rhs);
        }
  }
}

TEST_CASE("commutation law X_s X_t = beta(s,t) X_t X_s") {
  for (const char* label : {"D(2;+1)", "D(2;-1)", "D(3;R)", "D(3;C)", "D(3;+1)"}) {
    auto d = GDAlgebra::build(label);
    auto elems = d.support().torsion_elements();
    for (const AbElem& s : elems)
      for (const AbElem& t : elems) {
        auto st = d.multiply(d.monomial(s), d.monomial(t));
        auto ts = d.multiply(d.monomial(t), d.monomial(s));
        auto scaled = ts;
        scaled.coeff = scaled.coeff * Cyc::root(d.field(), d.beta_exp(s, t));
        REQUIRE(st.degree == scaled.degree);
        REQUIRE(st.coeff == scaled.coeff);
      }
  }
}

TEST_CASE("involution is an involutive antiautomorphism") {
  for (const char* label : {"D(2;+1)", "D(2;-1)", "D(3;R)", "D(3;C)", "D(3;+1)", "D(3;-1)"}) {
    auto d = GDAlgebra::build(label);
    auto elems = d.support().torsion_elements();
    for (const AbElem& s : elems) {
      auto x = d.monomial(s);
      auto back = d.phi0(d.phi0(x));
      REQUIRE(back.coeff == x.coeff);
      for (const AbElem& t : elems) {
        auto y = d.monomial(t);
        auto lhs = d.phi0(d.multiply(x, y));
        auto rhs = d.multiply(d.phi0(y), d.phi0(x));
        REQUIRE(lhs.degree == rhs.degree);
        REQUIRE(lhs.coeff == rhs.coeff);
      }
    }
  }
}

TEST_CASE("eta polarization on the 2-elementary families") {
  for (const char* label : {"D(2;+1)", "D(4;-1)", "D(3;R)", "D(3;+1)", "D(3;-1)"}) {
    auto d = GDAlgebra::build(label);
    auto elems = d.support().torsion_elements();
    for (const AbElem& s : elems)
      for (const AbElem& t : elems)
        REQUIRE(d.eta(d.support().add(s, t)) == d.eta(s) * d.eta(t) * d.beta_sign(s, t));
  }
}

TEST_CASE("x phi0(x) is positive on square roots of the identity") {
  for (const char* label : {"D(2;+1)", "D(2;-1)", "D(3;R)", "D(3;C)", "D(9;C)"}) {
    auto d = GDAlgebra::build(label);
    for (const AbElem& t : d.support().torsion_elements()) {
      if (!d.support().is_zero(d.support().scale(2, t))) continue;
      auto x = d.monomial(t);
      auto prod = d.multiply(x, d.phi0(x));
      REQUIRE(d.support().is_zero(prod.degree));
      REQUIRE(prod.coeff.is_rational());
      REQUIRE(prod.coeff.rational_value().sign() > 0);
    }
  }
}

TEST_CASE("radical of beta matches the center support") {
  CHECK(GDAlgebra::build("D(2;+1)").center_support().size() == 1);
  CHECK(GDAlgebra::build("D(4;-1)").center_support().size() == 1);
  CHECK(GDAlgebra::build("D(3;C)").center_support().size() == 1);
  CHECK(GDAlgebra::build("D(1;R)").center_support().size() == 2);
  CHECK(GDAlgebra::build("D(5;+1)").center_support().size() == 2);
}

TEST_CASE("Weyl group elements extend to algebra automorphisms") {
  // psi sends each generator X_{b_i} to X_{alpha(b_i)} and each X_t to the
  // ordered product of the images over the set bits of t; the extension is a
  // genuine automorphism iff psi(X_s X_t) = psi(X_s) psi(X_t) throughout
  for (const char* label : {"D(2;+1)", "D(2;-1)", "D(4;+1)"}) {
    auto d = GDAlgebra::build(label);
    auto w = d.weyl_group();
    auto elems = d.support().torsion_elements();
    int rank = d.support().torsion_rank();
    for (const Perm& g : w.generators()) {
      std::vector<HomElem> psi(d.carrier_size());
      for (const AbElem& t : elems) {
        HomElem acc = d.monomial(d.support().zero());
        for (int i = 0; i < rank; ++i) {
          if (!t[i]) continue;
          AbElem bi = d.support().zero();
          bi[i] = 1;
          AbElem image = d.elem_at(g[d.elem_index(bi)]);
          acc = d.multiply(acc, d.monomial(image));
        }
        psi[d.elem_index(t)] = std::move(acc);
      }
      auto at = [&](const AbElem& t) { return psi[d.elem_index(t)]; };
      for (const AbElem& s : elems)
        for (const AbElem& t : elems) {
          auto lhs = at(d.support().add(s, t));
          lhs.coeff = lhs.coeff * Cyc::root(d.field(), d.sigma_exp(s, t));
          auto rhs = d.multiply(at(s), at(t));
          REQUIRE(lhs.degree == rhs.degree);
          REQUIRE(lhs.coeff == rhs.coeff);
        }
    }
  }
}

TEST_CASE("weyl groups of the degenerate-radical families") {
  // dim 3 with central square -1: isometries of the quotient plane
  CHECK(GDAlgebra::build("D(3;R)").weyl_group().order() == 6);     // Sp(2,2)
  // dim 3 with central square +1: affine extension of O+(2,2)
  CHECK(GDAlgebra::build("D(3;+1)").weyl_group().order() == 8);    // 2^2 * |O+(2,2)|
  CHECK(GDAlgebra::build("D(3;-1)").weyl_group().order() == 24);   // 2^2 * |O-(2,2)|
  // dim 5 exercises the generator-based construction
  CHECK(GDAlgebra::build("D(5;R)").weyl_group().order() == sp_order(4));
  CHECK(GDAlgebra::build("D(5;+1)").weyl_group().order() == 16 * o_order(4, +1));
  CHECK(GDAlgebra::build("D(5;-1)").weyl_group().order() == 16 * o_order(4, -1));
}

TEST_CASE("mu is rejected where undefined") {
  auto d = GDAlgebra::build("D(3;C)");
  CHECK_THROWS_AS(d.mu(d.support().zero()), std::domain_error);
}
