#include "qcover/pi_ring.hpp"

#include <algorithm>
#include <tuple>
#include <vector>

#include "qcover/text_cursor.hpp"

namespace qcover {

PiScalar PiScalar::monomial(long coeff, int pi_power, int q_exp) {
  Laurent m = Laurent::monomial(coeff, q_exp);
  return (pi_power % 2 == 0) ? PiScalar(m) : PiScalar(Laurent{}, m);
}

PiScalar& PiScalar::operator+=(const PiScalar& o) {
  even_ += o.even_;
  odd_ += o.odd_;
  return *this;
}

PiScalar& PiScalar::operator-=(const PiScalar& o) {
  even_ -= o.even_;
  odd_ -= o.odd_;
  return *this;
}

PiScalar operator*(const PiScalar& a, const PiScalar& b) {
  // pi^2 = 1.
  if (a.odd_.is_zero() && b.odd_.is_zero()) return PiScalar(a.even_ * b.even_);
  return {a.even_ * b.even_ + a.odd_ * b.odd_, a.even_ * b.odd_ + a.odd_ * b.even_};
}

PiScalar PiScalar::pow(unsigned n) const {
  PiScalar result(1);
  PiScalar base = *this;
  while (n > 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n > 0) base *= base;
  }
  return result;
}

PiScalar bar(const PiScalar& x) {
  // pi^p q^n -> pi^{p+n} q^{-n}
  std::vector<Laurent::Term> even, odd;
  for (const auto& [e, c] : x.even_part().terms()) {
    ((e % 2 == 0) ? even : odd).emplace_back(-e, c);
  }
  for (const auto& [e, c] : x.odd_part().terms()) {
    ((e % 2 == 0) ? odd : even).emplace_back(-e, c);
  }
  return {Laurent::from_terms(std::move(even)), Laurent::from_terms(std::move(odd))};
}

Laurent specialize(const PiScalar& x, int sign) {
  return sign > 0 ? x.even_part() + x.odd_part() : x.even_part() - x.odd_part();
}

PiScalar divide_exact(const PiScalar& num, const PiScalar& den) {
  Laurent dp = specialize(den, 1), dm = specialize(den, -1);
  if (dp.is_zero() || dm.is_zero()) throw InternalError("exact division by a zero divisor");
  auto xp = specialize(num, 1).divide_exact(dp);
  auto xm = specialize(num, -1).divide_exact(dm);
  if (!xp || !xm) throw InternalError("exact division left a remainder");
  Laurent two_f = *xp + *xm;
  Laurent two_g = *xp - *xm;
  if (two_f.content() % 2 != 0 || two_g.content() % 2 != 0) {
    throw InternalError("exact division left a remainder");
  }
  PiScalar r(two_f.divided_exact(2), two_g.divided_exact(2));
  if (r * den != num) throw InternalError("exact division check failed");
  return r;
}

// PiRational

PiRational::PiRational(const PiScalar& x)
    : plus_(x.even_part() + x.odd_part()), minus_(x.even_part() - x.odd_part()) {}

PiRational PiRational::from_components(RatFunc plus, RatFunc minus) {
  PiRational r;
  r.plus_ = std::move(plus);
  r.minus_ = std::move(minus);
  return r;
}

PiRational PiRational::from_parts(const RatFunc& even, const RatFunc& odd) {
  return from_components(even + odd, even - odd);
}

PiRational PiRational::fraction(const PiScalar& num, const PiScalar& den) {
  Laurent dp = specialize(den, 1), dm = specialize(den, -1);
  if (dp.is_zero() || dm.is_zero()) throw ZeroDivisorError("denominator is a zero divisor");
  return from_components(RatFunc(specialize(num, 1), dp), RatFunc(specialize(num, -1), dm));
}

RatFunc PiRational::even_part() const { return (plus_ + minus_).halved(); }
RatFunc PiRational::odd_part() const { return (plus_ - minus_).halved(); }

bool PiRational::is_one() const { return plus_ == RatFunc(1) && minus_ == RatFunc(1); }

bool PiRational::is_integral() const {
  if (!plus_.is_polynomial() || !minus_.is_polynomial()) return false;
  Laurent d = plus_.num() - minus_.num();
  return d.content() % 2 == 0;
}

PiScalar PiRational::to_scalar() const {
  if (!is_integral()) throw InternalError("coefficient is not integral");
  const Laurent& p = plus_.num();
  const Laurent& m = minus_.num();
  return {(p + m).divided_exact(2), (p - m).divided_exact(2)};
}

PiRational PiRational::inverse() const {
  if (!is_invertible()) throw ZeroDivisorError("element is not invertible (f^2 - g^2 = 0)");
  return from_components(plus_.inverse(), minus_.inverse());
}

PiRational bar(const PiRational& x) {
  return PiRational::from_components(x.component(1).substitute_inverse(1),
                                     x.component(-1).substitute_inverse(-1));
}

// Combinatorics

PiScalar qint(long n) {
  if (n == 0) return {};
  if (n < 0) return -qint(-n).times_pi_power(-n);
  std::vector<Laurent::Term> even, odd;
  for (long i = 0; i < n; ++i) {
    const int e = static_cast<int>(n - 1 - 2 * i);
    (((n - 1 - i) % 2 == 0) ? even : odd).emplace_back(e, Integer(1));
  }
  return {Laurent::from_terms(std::move(even)), Laurent::from_terms(std::move(odd))};
}

PiScalar qfact(long a) {
  if (a < 0) throw std::domain_error("qfact of a negative integer");
  PiScalar r(1);
  for (long i = 2; i <= a; ++i) r *= qint(i);
  return r;
}

PiScalar qbinom(long n, long a) {
  if (a < 0) throw std::domain_error("qbinom with negative lower index");
  if (a == 0) return PiScalar(1);
  PiScalar num(1);
  for (long i = 1; i <= a; ++i) {
    num *= qint(n + i - a);
    if (num.is_zero()) return {};
  }
  return divide_exact(num, qfact(a));
}

PiScalar qdelta() { return PiScalar(Laurent::monomial(-1, -1), Laurent::q_power(1)); }

PiScalar theta_coeff(long n) {
  if (n < 0) throw std::domain_error("theta_coeff of a negative integer");
  const long c = n * (n - 1) / 2;
  PiScalar r = qfact(n) * PiScalar::monomial(1, static_cast<int>(c % 2), static_cast<int>(-c)) *
               qdelta().pow(static_cast<unsigned>(n));
  return (n % 2 == 0) ? r : -r;
}

bool cone_membership(const PiScalar& x, Cone cone) {
  switch (cone) {
    case Cone::positive:
      return x.even_part().all_coefficients_nonnegative() &&
             x.odd_part().all_coefficients_nonnegative();
    case Cone::q_minus_lattice: {
      auto neg = [](const Laurent& l) { return l.is_zero() || l.max_exp() < 0; };
      return neg(x.even_part()) && neg(x.odd_part());
    }
  }
  return false;
}

// Text

namespace {

std::string render_term(const Integer& c, bool with_pi, int exponent) {
  std::string out;
  if (exponent == 0) {
    if (!with_pi) return c.get_str();
    if (c == 1) return "p";
    if (c == -1) return "-1*p";
    return c.get_str() + "*p";
  }
  if (c == -1) {
    out = "-1*";
  } else if (c != 1) {
    out = c.get_str() + "*";
  }
  if (with_pi) out += "p*";
  out += "q";
  if (exponent != 1) out += "^" + std::to_string(exponent);
  return out;
}

struct TextTerm {
  int exponent;
  bool with_pi;
  Integer coeff;
};

std::string render(std::vector<TextTerm> terms) {
  if (terms.empty()) return "0";
  std::sort(terms.begin(), terms.end(), [](const TextTerm& a, const TextTerm& b) {
    return std::tie(b.exponent, a.with_pi) < std::tie(a.exponent, b.with_pi);
  });
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += " + ";
    out += render_term(terms[i].coeff, terms[i].with_pi, terms[i].exponent);
  }
  return out;
}

PiScalar parse_term(detail::Cursor& cur) {
  Integer coeff = 1;
  int pi_power = 0;
  int q_exp = 0;
  bool any = false;
  do {
    if (cur.at_integer()) {
      coeff *= cur.integer();
    } else if (cur.accept('p')) {
      pi_power ^= 1;
    } else if (cur.accept('q')) {
      long e = 1;
      if (cur.accept('^')) {
        if (cur.accept('(')) {
          e = cur.small_integer();
          cur.expect(')');
        } else {
          e = cur.small_integer();
        }
      }
      q_exp += static_cast<int>(e);
    } else {
      cur.fail(any ? "expected factor after '*'" : "expected term");
    }
    any = true;
  } while (cur.accept('*'));
  Laurent m = Laurent::monomial(coeff, q_exp);
  return pi_power ? PiScalar(Laurent{}, m) : PiScalar(m);
}

}  // namespace

PiScalar detail::parse_scalar_expr(detail::Cursor& cur) {
  PiScalar acc;
  bool negate = false;
  if (cur.peek() == '-' && !cur.at_integer()) {
    cur.accept('-');
    negate = true;
  }
  for (;;) {
    PiScalar t = parse_term(cur);
    acc += negate ? -t : t;
    if (cur.accept('+')) {
      negate = false;
    } else if (cur.peek() == '-' && !cur.at_integer()) {
      cur.accept('-');
      negate = true;
    } else if (cur.peek() == '-') {
      // "a -3*q": binary minus directly followed by digits.
      negate = false;
    } else {
      break;
    }
  }
  return acc;
}

std::optional<PiRational> detail::parse_coefficient(Cursor& cur) {
  if (cur.peek() != '(') return std::nullopt;
  cur.expect('(');
  PiScalar num = parse_scalar_expr(cur);
  cur.expect(')');
  PiRational value(num);
  if (cur.accept('/')) {
    cur.expect('(');
    std::size_t at = cur.pos;
    PiScalar den = parse_scalar_expr(cur);
    cur.expect(')');
    try {
      value = PiRational::fraction(num, den);
    } catch (const ZeroDivisorError&) {
      throw ParseError("denominator is a zero divisor", at);
    }
  }
  cur.expect('*');
  return value;
}

std::string detail::coefficient_prefix(const PiRational& c) {
  if (c.is_one()) return "";
  std::string s = format_rational(c);
  if (!c.is_integral()) return s + " * ";
  return "(" + s + ") * ";
}

std::string format_scalar(const PiScalar& x) {
  std::vector<TextTerm> terms;
  for (const auto& [e, c] : x.even_part().terms()) terms.push_back({e, false, c});
  for (const auto& [e, c] : x.odd_part().terms()) terms.push_back({e, true, c});
  return render(std::move(terms));
}

std::string format_laurent(const Laurent& x) { return format_scalar(PiScalar(x)); }

std::string format_ratfunc(const RatFunc& x) {
  if (x.is_polynomial()) return format_laurent(x.num());
  return "(" + format_laurent(x.num()) + ")/(" + format_laurent(x.den()) + ")";
}

PiScalar parse_scalar(std::string_view text) {
  detail::Cursor cur{text};
  PiScalar v = detail::parse_scalar_expr(cur);
  if (!cur.at_end()) cur.fail("unexpected trailing input");
  return v;
}

std::string format_rational(const PiRational& x) {
  if (x.is_integral()) return format_scalar(x.to_scalar());
  RatFunc f = x.even_part(), g = x.odd_part();
  // Least common denominator over Q[q], then clear integer denominators.
  Laurent g0 = poly::gcd(f.den(), g.den());
  Laurent lcm = poly::primitive_part(*(poly::primitive_part(f.den()) * poly::primitive_part(g.den()))
                                          .divide_exact(g0));
  RatFunc fl = f * RatFunc(lcm), gl = g * RatFunc(lcm);
  Integer c = 1;
  for (const RatFunc* r : {&fl, &gl}) {
    if (!r->is_zero()) {
      const Integer& d = r->den().leading_coeff();
      mpz_lcm(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    }
  }
  auto numer = [&](const RatFunc& r) {
    if (r.is_zero()) return Laurent{};
    return r.num().scaled(c / r.den().leading_coeff());
  };
  Laurent fn = numer(fl), gn = numer(gl);
  Laurent den = lcm.scaled(c);
  Integer k = den.content();
  mpz_gcd(k.get_mpz_t(), k.get_mpz_t(), fn.content().get_mpz_t());
  mpz_gcd(k.get_mpz_t(), k.get_mpz_t(), gn.content().get_mpz_t());
  if (k != 1 && k != 0) {
    fn = fn.divided_exact(k);
    gn = gn.divided_exact(k);
    den = den.divided_exact(k);
  }
  return "(" + format_scalar(PiScalar(fn, gn)) + ")/(" + format_laurent(den) + ")";
}

PiRational parse_rational(std::string_view text) {
  detail::Cursor cur{text};
  if (cur.peek() == '(') {
    cur.expect('(');
    PiScalar num = detail::parse_scalar_expr(cur);
    cur.expect(')');
    if (cur.accept('/')) {
      cur.expect('(');
      std::size_t at = cur.pos;
      PiScalar den = detail::parse_scalar_expr(cur);
      cur.expect(')');
      if (!cur.at_end()) cur.fail("unexpected trailing input");
      try {
        return PiRational::fraction(num, den);
      } catch (const ZeroDivisorError&) {
        throw ParseError("denominator is a zero divisor", at);
      }
    }
    if (!cur.at_end()) cur.fail("unexpected trailing input");
    return PiRational(num);
  }
  return PiRational(parse_scalar(text));
}

}  // namespace qcover
