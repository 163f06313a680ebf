#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace qcover {

using Integer = mpz_class;

/// Sparse Laurent polynomial in q with arbitrary-precision integer
/// coefficients. Terms are kept sorted by exponent with no zero coefficients,
/// so structural equality is value equality.
class Laurent {
 public:
  using Term = std::pair<int, Integer>;

  Laurent() = default;
  Laurent(long c);  // NOLINT(google-explicit-constructor)
  explicit Laurent(const Integer& c);

  static Laurent monomial(const Integer& c, int exponent);
  static Laurent q_power(int exponent) { return monomial(1, exponent); }
  /// Terms may be unsorted and may repeat exponents.
  static Laurent from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_constant() const;
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  // Both require a nonzero polynomial.
  int min_exp() const;
  int max_exp() const;
  const Integer& leading_coeff() const;
  const Integer& trailing_coeff() const;

  Integer coeff(int exponent) const;

  Laurent operator-() const;
  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  Laurent& operator*=(const Laurent& o);
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  friend bool operator==(const Laurent& a, const Laurent& b) = default;

  Laurent scaled(const Integer& c) const;
  /// Multiply by q^k.
  Laurent shifted(int k) const;
  /// Ring map q -> sign * q^{-1}.
  Laurent substitute_inverse(int sign) const;
  /// Ring map q -> sign * q.
  Laurent substitute_sign(int sign) const;
  Laurent pow(unsigned n) const;

  /// Positive gcd of all coefficients; zero for the zero polynomial.
  Integer content() const;
  /// Divide every coefficient by c; every coefficient must be divisible.
  Laurent divided_exact(const Integer& c) const;

  /// Exact division in Z[q, q^-1]; nullopt if the quotient does not exist.
  std::optional<Laurent> divide_exact(const Laurent& d) const;

  /// Terms with exponent < 0, == 0, > 0.
  Laurent negative_part() const;
  Laurent positive_part() const;

  bool all_coefficients_nonnegative() const;

  /// Debug rendering, e.g. "3*q^2 + -1*q^-1".
  std::string str() const;

 private:
  void normalize();
  std::vector<Term> terms_;
};

/// Polynomial helpers. Arguments are treated as ordinary polynomials
/// (minimum exponent >= 0).
namespace poly {

/// Primitive gcd with positive leading coefficient. gcd(0, 0) is 0.
Laurent gcd(const Laurent& a, const Laurent& b);
/// a divided by its content, with sign chosen so the leading coefficient is
/// positive.
Laurent primitive_part(const Laurent& a);

}  // namespace poly

}  // namespace qcover
