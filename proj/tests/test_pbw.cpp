#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles/naive_pbw.hpp"
#include "qcover/pbw.hpp"

using namespace qcover;

namespace {

const PiRational P = PiRational(PiScalar::pi());
PiRational qp(int e) { return PiRational(PiScalar::q_power(e)); }
PiRational pip(long p) { return PiRational(1).times_pi_power(p); }
const PiRational Dinv = PiRational(qdelta()).inverse();

PBWElement E(int s, int p = 1) { return PBWElement::E(s, p); }
PBWElement F(int s, int p = 1) { return PBWElement::F(s, p); }
PBWElement K(int s, int p = 1) { return PBWElement::K(s, p); }

PBWElement random_element(std::mt19937& rng, int sector, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg), kk(-2, 2), coeff(-2, 2), cnt(1, 3);
  PBWElement x;
  int n = cnt(rng);
  for (int i = 0; i < n; ++i) {
    int a = deg(rng);
    int c = std::uniform_int_distribution<int>(0, max_deg - a)(rng);
    int e = coeff(rng);
    if (e == 0) e = 1;
    x.add_term({sector, a, kk(rng), c}, PiRational(PiScalar::monomial(e, i & 1, kk(rng))));
  }
  return x;
}

}  // namespace

TEST_CASE("defining relations") {
  CHECK(E(0) * F(0) == (F(0) * E(0)).scaled(P) + (K(0) - K(0, -1)).scaled(Dinv));
  CHECK(E(1) * F(1) == (F(1) * E(1)).scaled(P) + (K(1).scaled(P) - K(1, -1)).scaled(Dinv));
  // K E = q^2 E K; the F K E normal form keeps K E as the monomial itself.
  CHECK(K(0) * E(0) == (E(0) * K(0)).scaled(qp(2)));
  CHECK((E(0) * K(0)).coeff({0, 0, 1, 1}) == qp(-2));
  CHECK(K(0) * F(0) * K(0, -1) == F(0).scaled(qp(-2)));
  CHECK(K(1) * K(1, -1) == PBWElement::idempotent(1));
  CHECK((E(0) * F(1)).is_zero());
  CHECK(PBWElement::one() * E(1) == E(1));
  CHECK_THROWS_AS(PBWElement::monomial(0, -1, 0, 0), std::invalid_argument);
}

TEST_CASE("divided powers against the naive normal form") {
  for (int s = 0; s <= 1; ++s) {
    for (int r = 0; r <= 4; ++r) {
      for (int t = 0; t <= 4; ++t) {
        std::string w(r, 'E');
        w += std::string(t, 'F');
        PBWElement naive = oracle::to_divided(oracle::word(s, w))
                               .scaled(PiRational(qfact(r) * qfact(t)).inverse());
        CHECK(E(s, r) * F(s, t) == naive);
      }
    }
    // a mixed word
    PBWElement naive = oracle::to_divided(oracle::word(s, "FEKFEEkF"));
    CHECK(F(s) * E(s) * K(s) * F(s) * E(s) * E(s) * K(s, -1) * F(s) == naive);
  }
}

TEST_CASE("commutation identities") {
  for (int s = 0; s <= 1; ++s) {
    for (int r = 1; r <= 4; ++r) {
      for (int t = 1; t <= 4; ++t) {
        // (1)
        CHECK((E(s) * F(s, t)).scaled(pip(t)) ==
              F(s, t) * E(s) + (F(s, t - 1) * k_bracket(s, 1 - t)).scaled(P));
        // (2)
        PBWElement rhs;
        for (int i = 0; i <= std::min(r, t); ++i) {
          rhs += (F(s, t - i) * k_binom(s, 2 * i - (r + t), i) * E(s, r - i)).scaled(pip(i * (i + 1) / 2));
        }
        CHECK((E(s, r) * F(s, t)).scaled(pip(r * t)) == rhs);
        // (3)
        CHECK((F(s) * E(s, t)).scaled(pip(t)) ==
              E(s, t) * F(s) - (E(s, t - 1) * k_bracket(s, t - 1)).scaled(pip(1 - t)));
        // (4)
        PBWElement rhs4;
        for (int i = 0; i <= std::min(r, t); ++i) {
          PiRational c = pip(i * (r + t));
          if (i & 1) c = -c;
          rhs4 += (E(s, r - i) * k_binom(s, r + t - (i + 1), i) * F(s, t - i)).scaled(c);
        }
        CHECK((F(s, t) * E(s, r)).scaled(pip(r * t)) == rhs4);
      }
    }
  }
}

TEST_CASE("associativity") {
  std::mt19937 rng(5);
  for (int i = 0; i < 30; ++i) {
    int s = i & 1;
    PBWElement x = random_element(rng, s, 3), y = random_element(rng, s, 3), z = random_element(rng, s, 3);
    CHECK((x * y) * z == x * (y * z));
  }
}

TEST_CASE("K bracket identities") {
  for (int s = 0; s <= 1; ++s) {
    for (int n = -4; n <= 4; ++n) {
      CHECK(E(s) * k_bracket(s, n) == k_bracket(s, n - 2) * E(s));
      CHECK(F(s) * k_bracket(s, n) == k_bracket(s, n + 2) * F(s));
      CHECK(k_binom(s, n, 1) == k_bracket(s, n));
      for (int a = -4; a <= 4; ++a) {
        for (int b = -4; b <= 4; ++b) {
          CHECK(k_bracket(s, a).scaled(PiRational(qint(b + n))) ==
                k_bracket(s, a + n).scaled(PiRational(qint(b))) +
                    k_bracket(s, a - b).scaled(PiRational(qint(n)).times_pi_power(b)));
        }
      }
    }
  }
  CHECK(k_bracket(0, 0) == (K(0) - K(0, -1)).scaled(Dinv));
}

TEST_CASE("morphisms") {
  using M = Morphism;
  CHECK(apply_morphism(M::rho, E(0)) == (K(0) * F(0)).scaled(qp(1)));
  CHECK(apply_morphism(M::psi, K(1)) == K(1, -1).scaled(P));
  for (int s = 0; s <= 1; ++s) {
    for (int r = 0; r <= 4; ++r) {
      CHECK(apply_morphism(M::omega, E(s, r)) == F(s, r));
      CHECK(apply_morphism(M::omega, F(s, r)) == E(s, r).scaled(pip(r * (1 - s))));
    }
    for (int n = -3; n <= 3; ++n) {
      CHECK(apply_morphism(M::omega, k_bracket(s, n)) == -k_bracket(s, -n).scaled(pip(s + n)));
      for (int a = 0; a <= 3; ++a) {
        PiRational c = pip(s * a + n * a - a * (a - 1) / 2);
        if (a & 1) c = -c;
        CHECK(apply_morphism(M::omega, k_binom(s, n, a)) == k_binom(s, a - n - 1, a).scaled(c));
      }
    }
  }
  std::mt19937 rng(9);
  for (int i = 0; i < 20; ++i) {
    int s = i & 1;
    PBWElement x = random_element(rng, s, 3), y = random_element(rng, s, 3);
    CHECK(apply_morphism(M::psi, x * y) == apply_morphism(M::psi, x) * apply_morphism(M::psi, y));
    CHECK(apply_morphism(M::omega, x * y) ==
          apply_morphism(M::omega, x) * apply_morphism(M::omega, y));
    CHECK(apply_morphism(M::tau, x * y) == apply_morphism(M::tau, y) * apply_morphism(M::tau, x));
    CHECK(apply_morphism(M::rho, x * y) == apply_morphism(M::rho, y) * apply_morphism(M::rho, x));
    CHECK(apply_morphism(M::rho, apply_morphism(M::rho, x)) == x);
    CHECK(apply_morphism(M::psi, apply_morphism(M::psi, x)) == x);
  }
  CHECK_FALSE(parse_morphism("phi").has_value());
}

TEST_CASE("casimir") {
  for (int s = 0; s <= 1; ++s) {
    PBWElement c = casimir(s);
    CHECK(c == casimir_ef_form(s));
    CHECK(c * E(s) == (E(s) * c).scaled(P));
    CHECK(c * F(s) == (F(s) * c).scaled(P));
    CHECK(c * K(s) == K(s) * c);
    CHECK(apply_morphism(Morphism::omega, c) == c.scaled(pip(s)));
    CHECK(apply_morphism(Morphism::tau, c) == c.scaled(pip(s)));
  }
}

TEST_CASE("coproduct") {
  TensorElement dk = coproduct(K(0));
  TensorElement expected = TensorElement::pure({K(0), K(0)}) + TensorElement::pure({K(1), K(1)});
  CHECK(dk == expected);
  for (int s = 0; s <= 1; ++s) {
    for (int p = 1; p <= 4; ++p) {
      // closed formulas against the multiplicative extension
      TensorElement pe = coproduct(E(s)), pf = coproduct(F(s));
      for (int i = 1; i < p; ++i) {
        pe = pe * coproduct(E(s));
        pf = pf * coproduct(F(s));
      }
      PiRational inv = PiRational(qfact(p)).inverse();
      CHECK(coproduct(E(s, p)) == pe.scaled(inv));
      CHECK(coproduct(F(s, p)) == pf.scaled(inv));
    }
    for (const PBWElement& g : {E(s), F(s), K(s), K(s, -1), E(s, 2) * F(s) * K(s)}) {
      CHECK(coproduct_at(coproduct(g), 0) == coproduct_at(coproduct(g), 1));
    }
  }
  std::mt19937 rng(13);
  for (int i = 0; i < 10; ++i) {
    int s = i & 1;
    PBWElement x = random_element(rng, s, 2), y = random_element(rng, s, 2);
    CHECK(coproduct(x * y) == coproduct(x) * coproduct(y));
  }
}

TEST_CASE("counit and antipode") {
  CHECK(counit(K(0)).is_one());
  CHECK(counit(E(0)).is_zero());
  CHECK(counit(PBWElement::idempotent(1)).is_zero());
  CHECK(antipode(F(1)) == -(F(1) * K(1)));
  CHECK(antipode(E(0)) == -(K(0, -1) * E(0)));
  CHECK(antipode(E(1)) == -(K(1, -1) * E(1)).scaled(P));
  CHECK(antipode_contract(coproduct(K(0)), true) == PBWElement::one());
  for (int s = 0; s <= 1; ++s) {
    for (const PBWElement& g : {E(s), F(s), K(s), K(s, -1)}) {
      PBWElement unit = PBWElement::one().scaled(counit(g));
      CHECK(antipode_contract(coproduct(g), true) == unit);
      CHECK(antipode_contract(coproduct(g), false) == unit);
    }
  }
  // super anti-automorphism
  std::mt19937 rng(17);
  for (int i = 0; i < 20; ++i) {
    int s = i & 1;
    PBWElement x = random_element(rng, s, 3), y = random_element(rng, s, 3);
    PBWElement lhs = antipode(x * y);
    PBWElement rhs;
    for (const auto& [mx, cx] : x.terms()) {
      for (const auto& [my, cy] : y.terms()) {
        PBWElement a, b;
        a.add_term(mx, cx);
        b.add_term(my, cy);
        rhs += (antipode(b) * antipode(a)).scaled(pip(mx.parity() * my.parity()));
      }
    }
    CHECK(lhs == rhs);
  }
}

TEST_CASE("element text") {
  PBWElement x = E(0) * F(0);
  std::string s = format_element(x);
  CHECK(parse_element(s) == x);
  CHECK(format_element(parse_element(s)) == s);
  CHECK(parse_element("E0 F0") == x);
  CHECK(parse_element("e1") == PBWElement::idempotent(1));
  CHECK(parse_element("(q^2) * K0^-1 E0^(2)") == (K(0, -1) * E(0, 2)).scaled(qp(2)));
  CHECK(format_element(E(0) * K(0)) == "(q^-2) * K0 E0");
  CHECK(parse_element("0").is_zero());
  CHECK_THROWS_AS(parse_element("E2"), ParseError);
  CHECK_THROWS_AS(parse_element("E0 +"), ParseError);
  std::mt19937 rng(21);
  for (int i = 0; i < 20; ++i) {
    PBWElement y = random_element(rng, i & 1, 3) * random_element(rng, i & 1, 2);
    CHECK(parse_element(format_element(y)) == y);
  }
}
