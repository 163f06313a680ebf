#include "qcover/ratfunc.hpp"

#include <stdexcept>

namespace qcover {

RatFunc::RatFunc(Laurent num, Laurent den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = Laurent(1);
    return;
  }
  // Move powers of q from the denominator into the numerator.
  if (den_.min_exp() != 0) {
    num_ = num_.shifted(-den_.min_exp());
    den_ = den_.shifted(-den_.min_exp());
  }
  if (den_.max_exp() > 0) {
    Laurent g = poly::gcd(num_.shifted(-num_.min_exp()), den_);
    if (g.max_exp() > 0) {
      num_ = *num_.divide_exact(g);
      den_ = *den_.divide_exact(g);
    }
  }
  Integer c = num_.content();
  mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), den_.content().get_mpz_t());
  if (den_.leading_coeff() < 0) c = -c;
  if (c != 1) {
    num_ = num_.divided_exact(c);
    den_ = den_.divided_exact(c);
  }
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (b.num_.is_zero()) return a;
  if (a.num_.is_zero()) return b;
  if (a.den_.is_one() && b.den_.is_one()) return RatFunc(a.num_ + b.num_);
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.num_.is_zero() || b.num_.is_zero()) return {};
  if (a.den_.is_one() && b.den_.is_one()) return RatFunc(a.num_ * b.num_);
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc RatFunc::inverse() const {
  if (num_.is_zero()) throw std::domain_error("inverse of zero rational function");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::scaled(const Integer& c) const {
  if (c == 0) return {};
  if (den_.is_one()) return RatFunc(num_.scaled(c));
  return RatFunc(num_.scaled(c), den_);
}

RatFunc RatFunc::halved() const { return RatFunc(num_, den_.scaled(2)); }

RatFunc RatFunc::substitute_inverse(int sign) const {
  if (den_.is_one()) return RatFunc(num_.substitute_inverse(sign));
  return RatFunc(num_.substitute_inverse(sign), den_.substitute_inverse(sign));
}

std::string RatFunc::str() const {
  if (den_.is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace qcover
