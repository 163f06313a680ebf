#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qcover/pi_ring.hpp"

using namespace qcover;

namespace {

PiScalar Q(int e) { return PiScalar::q_power(e); }
const PiScalar P = PiScalar::pi();

// Oracle: [n] as the quotient ((pi q)^n - q^-n)/(pi q - q^-1), computed in
// each specialization with rational functions and recombined.
PiRational qint_by_division(long n) {
  auto comp = [n](int s) {
    Laurent num = Laurent::monomial(s, 1).pow(n > 0 ? n : 0);
    if (n < 0) {
      // (s q)^n = (s q^{-1})^{-n} with s = s^{-1}
      num = Laurent::monomial(s, -1).pow(-n);
    }
    num -= Laurent::q_power(static_cast<int>(-n));
    Laurent den = Laurent::monomial(s, 1) - Laurent::q_power(-1);
    return RatFunc(num, den);
  };
  return PiRational::from_components(comp(1), comp(-1));
}

PiScalar random_scalar(std::mt19937& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3), exp(-4, 4), count(0, 4);
  PiScalar x;
  int n = count(rng);
  for (int i = 0; i < n; ++i) x += PiScalar::monomial(coeff(rng), coeff(rng) & 1, exp(rng));
  return x;
}

}  // namespace

TEST_CASE("pi squares to one") {
  CHECK(P * P == PiScalar(1));
  CHECK((PiScalar(1) + P * Q(1)) * (PiScalar(1) - P * Q(1)) == PiScalar(1) - Q(2));
}

TEST_CASE("inverse of pi q - q^-1") {
  PiRational d = PiRational(qdelta());
  PiRational expected = PiRational::fraction(P * Q(1) + Q(-1), Q(2) - Q(-2));
  CHECK(d.inverse() == expected);
  CHECK(d.inverse() * d == PiRational(1));
}

TEST_CASE("zero divisors are not invertible") {
  PiRational z(PiScalar(1) + P);
  CHECK_FALSE(z.is_invertible());
  CHECK_THROWS_AS(z.inverse(), ZeroDivisorError);
  CHECK(PiRational(PiScalar(1) + P) * PiRational(PiScalar(1) - P) == PiRational(0));
}

TEST_CASE("bar") {
  CHECK(bar(Q(1)) == P * Q(-1));
  CHECK(bar(P * Q(-2)) == P * Q(2));
  for (long n = -8; n <= 8; ++n) {
    CHECK(bar(qint(n)) == qint(n));
    for (long a = 0; a <= 8; ++a) CHECK(bar(qbinom(n, a)) == qbinom(n, a));
  }
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    PiScalar x = random_scalar(rng);
    CHECK(bar(bar(x)) == x);
    // At pi = 1 the twisted bar is the classical q -> q^-1.
    CHECK(specialize(bar(x), 1) == specialize(x, 1).substitute_inverse(1));
  }
}

TEST_CASE("specialization") {
  CHECK(specialize(P, -1) == Laurent(-1));
  CHECK(specialize(qint(2), 1) == Laurent::q_power(1) + Laurent::q_power(-1));
  CHECK(specialize(qint(2), -1) == Laurent::q_power(-1) - Laurent::q_power(1));
  std::mt19937 rng(11);
  for (int i = 0; i < 50; ++i) {
    PiScalar x = random_scalar(rng), y = random_scalar(rng);
    for (int s : {1, -1}) CHECK(specialize(x * y, s) == specialize(x, s) * specialize(y, s));
  }
}

TEST_CASE("quantum integers") {
  CHECK(qint(0).is_zero());
  CHECK(qint(2) == P * Q(1) + Q(-1));
  CHECK(qint(-2) == -(P * Q(1)) - Q(-1));
  for (long n = -8; n <= 8; ++n) {
    CHECK(PiRational(qint(n)) == qint_by_division(n));
    CHECK(qint(-n) == -qint(n).times_pi_power(n));
  }
}

TEST_CASE("binomials") {
  CHECK(qbinom(5, 0) == PiScalar(1));
  CHECK(qbinom(2, 1) == qint(2));
  CHECK(qbinom(-1, 2) == P);
  for (long n = 0; n <= 10; ++n) {
    for (long a = 0; a <= n; ++a) {
      CHECK(qbinom(n, a) * qfact(a) * qfact(n - a) == qfact(n));
    }
  }
  // [-n choose a] = (-1)^a pi^{na + a(a-1)/2} [n+a-1 choose a]
  for (long n = -8; n <= 8; ++n) {
    for (long a = 0; a <= 8; ++a) {
      PiScalar rhs = qbinom(n + a - 1, a).times_pi_power(n * a + a * (a - 1) / 2);
      if (a % 2) rhs = -rhs;
      CHECK(qbinom(-n, a) == rhs);
    }
  }
}

TEST_CASE("theta coefficients") {
  CHECK(theta_coeff(0) == PiScalar(1));
  CHECK(theta_coeff(1) == Q(-1) - P * Q(1));
  CHECK(theta_coeff(1) + bar(theta_coeff(1)) == PiScalar(0));
}

TEST_CASE("cones") {
  CHECK(cone_membership(qint(2), Cone::positive));
  CHECK_FALSE(cone_membership(-Q(1), Cone::positive));
  CHECK(cone_membership(Q(-2) + P * Q(-1), Cone::q_minus_lattice));
  CHECK_FALSE(cone_membership(PiScalar(1), Cone::q_minus_lattice));
}

TEST_CASE("scalar text") {
  CHECK(parse_scalar("q^-1 + -1*p*q") == PiScalar(Laurent::q_power(-1), Laurent::monomial(-1, 1)));
  CHECK(format_scalar(qint(2)) == "p*q + q^-1");
  CHECK(parse_scalar("0").is_zero());
  CHECK(format_scalar(PiScalar()) == "0");
  CHECK(format_scalar(P) == "p");
  CHECK(format_scalar(-P + PiScalar(3)) == "3 + -1*p");
  CHECK_THROWS_AS(parse_scalar("q^"), ParseError);
  CHECK_THROWS_AS(parse_scalar("2 +"), ParseError);
  std::mt19937 rng(3);
  for (int i = 0; i < 100; ++i) {
    PiScalar x = random_scalar(rng);
    std::string s = format_scalar(x);
    CHECK(parse_scalar(s) == x);
    CHECK(format_scalar(parse_scalar(s)) == s);
  }
}

TEST_CASE("rational text") {
  PiRational d = PiRational(qdelta()).inverse();
  std::string s = format_rational(d);
  CHECK(s == "(p*q^3 + q)/(q^4 + -1)");
  CHECK(parse_rational(s) == d);
  CHECK(format_rational(PiRational(qint(3))) == format_scalar(qint(3)));
  CHECK_THROWS_AS(parse_rational("(1)/(1 + p)"), ParseError);
}
