#pragma once

#include <string>

#include "qcover/laurent.hpp"

namespace qcover {

/// Element of Q(q), stored as num/den with num in Z[q, q^-1] and den in Z[q].
///
/// Canonical form: den has nonzero constant term and positive leading
/// coefficient, gcd(num, den) = 1 in Q[q], and the integer contents of num and
/// den are coprime. Under these rules equal values have equal
/// representations. A denominator of exactly 1 is the common case and skips
/// all gcd work.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(Laurent num) : num_(std::move(num)), den_(1) {}  // NOLINT
  /// General fraction; den must be nonzero.
  RatFunc(Laurent num, Laurent den);

  const Laurent& num() const { return num_; }
  const Laurent& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) = default;

  /// Throws std::domain_error on zero.
  RatFunc inverse() const;
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

  RatFunc scaled(const Integer& c) const;
  RatFunc halved() const;
  /// Field automorphism q -> sign * q^{-1}.
  RatFunc substitute_inverse(int sign) const;

  std::string str() const;

 private:
  void normalize();
  Laurent num_;
  Laurent den_;
};

}  // namespace qcover
