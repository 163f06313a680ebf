#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qcover/laurent.hpp"
#include "qcover/ratfunc.hpp"

namespace qcover {

/// Raised when a PiRational without an inverse is inverted.
struct ZeroDivisorError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Raised on malformed text; `position` is the byte offset of the problem.
struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position(position) {}
  std::size_t position;
};

/// Raised when an identity that must hold by construction fails.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Element f + g*pi of Z[q, q^-1][pi]/(pi^2 - 1).
class PiScalar {
 public:
  PiScalar() = default;
  PiScalar(long c) : even_(c) {}  // NOLINT(google-explicit-constructor)
  PiScalar(Laurent even, Laurent odd = {}) : even_(std::move(even)), odd_(std::move(odd)) {}  // NOLINT

  static PiScalar pi() { return {Laurent{}, Laurent(1)}; }
  static PiScalar q_power(int e) { return {Laurent::q_power(e)}; }
  /// pi^p q^e.
  static PiScalar monomial(long coeff, int pi_power, int q_exp);

  const Laurent& even_part() const { return even_; }
  const Laurent& odd_part() const { return odd_; }
  bool is_zero() const { return even_.is_zero() && odd_.is_zero(); }
  bool is_one() const { return even_.is_one() && odd_.is_zero(); }

  PiScalar operator-() const { return {-even_, -odd_}; }
  PiScalar& operator+=(const PiScalar& o);
  PiScalar& operator-=(const PiScalar& o);
  PiScalar& operator*=(const PiScalar& o) { return *this = *this * o; }
  friend PiScalar operator+(PiScalar a, const PiScalar& b) { return a += b; }
  friend PiScalar operator-(PiScalar a, const PiScalar& b) { return a -= b; }
  friend PiScalar operator*(const PiScalar& a, const PiScalar& b);
  friend bool operator==(const PiScalar& a, const PiScalar& b) = default;

  PiScalar times_pi() const { return {odd_, even_}; }
  PiScalar times_pi_power(long p) const { return (p % 2 == 0) ? *this : times_pi(); }
  PiScalar shifted(int k) const { return {even_.shifted(k), odd_.shifted(k)}; }
  PiScalar pow(unsigned n) const;

 private:
  Laurent even_;
  Laurent odd_;
};

/// Twisted bar involution q -> pi q^-1, pi -> pi.
PiScalar bar(const PiScalar& x);
/// Ring map pi -> sign.
Laurent specialize(const PiScalar& x, int sign);
/// Exact division; throws InternalError when the quotient is not in the ring.
PiScalar divide_exact(const PiScalar& num, const PiScalar& den);

/// Element of Q(q)[pi]/(pi^2 - 1).
///
/// Stored through the isomorphism with Q(q) x Q(q) given by the two
/// specializations pi -> +1 and pi -> -1; x is invertible exactly when both
/// components are nonzero. even_part() and odd_part() recover f and g in
/// x = f + g*pi.
class PiRational {
 public:
  PiRational() = default;
  PiRational(long c) : plus_(c), minus_(c) {}  // NOLINT(google-explicit-constructor)
  PiRational(const PiScalar& x);              // NOLINT(google-explicit-constructor)
  static PiRational from_components(RatFunc plus, RatFunc minus);
  static PiRational from_parts(const RatFunc& even, const RatFunc& odd);
  /// num / den; throws ZeroDivisorError when den is a zero divisor.
  static PiRational fraction(const PiScalar& num, const PiScalar& den);

  /// Value at pi = +1 (sign > 0) or pi = -1.
  const RatFunc& component(int sign) const { return sign > 0 ? plus_ : minus_; }
  RatFunc even_part() const;
  RatFunc odd_part() const;

  bool is_zero() const { return plus_.is_zero() && minus_.is_zero(); }
  bool is_one() const;
  bool is_invertible() const { return !plus_.is_zero() && !minus_.is_zero(); }
  /// True when both f and g are Laurent polynomials with integer coefficients.
  bool is_integral() const;
  /// Throws InternalError when not integral.
  PiScalar to_scalar() const;

  PiRational operator-() const { return from_components(-plus_, -minus_); }
  friend PiRational operator+(const PiRational& a, const PiRational& b) {
    return from_components(a.plus_ + b.plus_, a.minus_ + b.minus_);
  }
  friend PiRational operator-(const PiRational& a, const PiRational& b) {
    return from_components(a.plus_ - b.plus_, a.minus_ - b.minus_);
  }
  friend PiRational operator*(const PiRational& a, const PiRational& b) {
    return from_components(a.plus_ * b.plus_, a.minus_ * b.minus_);
  }
  PiRational& operator+=(const PiRational& o) { return *this = *this + o; }
  PiRational& operator-=(const PiRational& o) { return *this = *this - o; }
  PiRational& operator*=(const PiRational& o) { return *this = *this * o; }
  friend bool operator==(const PiRational& a, const PiRational& b) = default;

  /// (f - g pi)/(f^2 - g^2); throws ZeroDivisorError when f^2 = g^2.
  PiRational inverse() const;
  friend PiRational operator/(const PiRational& a, const PiRational& b) {
    return a * b.inverse();
  }
  PiRational times_pi_power(long p) const {
    return (p % 2 == 0) ? *this : from_components(plus_, -minus_);
  }

 private:
  RatFunc plus_;
  RatFunc minus_;
};

PiRational bar(const PiRational& x);

// Super quantum combinatorics.

/// [n] = ((pi q)^n - q^-n)/(pi q - q^-1), computed division-free.
PiScalar qint(long n);
/// [a]! = [1][2]...[a]; a >= 0.
PiScalar qfact(long a);
/// Super binomial coefficient, certified integral by exact division.
PiScalar qbinom(long n, long a);
/// pi q - q^-1.
PiScalar qdelta();
/// Coefficient of the n-th quasi-R-matrix term:
/// (-1)^n [n]! (pi q)^{-n(n-1)/2} (pi q - q^-1)^n.
PiScalar theta_coeff(long n);

enum class Cone { positive, q_minus_lattice };
/// positive: all coefficients >= 0. q_minus_lattice: every q-exponent < 0.
bool cone_membership(const PiScalar& x, Cone cone);

// Text forms.

/// Canonical scalar text: terms by descending q-exponent, the 1-part before
/// the pi-part at equal exponent, joined by " + ".
std::string format_scalar(const PiScalar& x);
PiScalar parse_scalar(std::string_view text);

/// Integral values print as scalars; others as "(<num>)/(<den>)" with a
/// pi-free denominator polynomial in q with positive leading coefficient.
std::string format_rational(const PiRational& x);
PiRational parse_rational(std::string_view text);

/// Text of a Laurent polynomial with the scalar grammar (no pi).
std::string format_laurent(const Laurent& x);
std::string format_ratfunc(const RatFunc& x);

}  // namespace qcover
