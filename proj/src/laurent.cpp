#include "qcover/laurent.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qcover {

Laurent::Laurent(long c) {
  if (c != 0) terms_.emplace_back(0, Integer(c));
}

Laurent::Laurent(const Integer& c) {
  if (c != 0) terms_.emplace_back(0, c);
}

Laurent Laurent::monomial(const Integer& c, int exponent) {
  Laurent r;
  if (c != 0) r.terms_.emplace_back(exponent, c);
  return r;
}

Laurent Laurent::from_terms(std::vector<Term> terms) {
  Laurent r;
  r.terms_ = std::move(terms);
  r.normalize();
  return r;
}

void Laurent::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      if (!out.empty() && out.back().second == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().second == 0) out.pop_back();
  terms_ = std::move(out);
}

bool Laurent::is_one() const {
  return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == 1;
}

bool Laurent::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0);
}

int Laurent::min_exp() const {
  if (terms_.empty()) throw std::logic_error("min_exp of zero polynomial");
  return terms_.front().first;
}

int Laurent::max_exp() const {
  if (terms_.empty()) throw std::logic_error("max_exp of zero polynomial");
  return terms_.back().first;
}

const Integer& Laurent::leading_coeff() const {
  if (terms_.empty()) throw std::logic_error("leading_coeff of zero polynomial");
  return terms_.back().second;
}

const Integer& Laurent::trailing_coeff() const {
  if (terms_.empty()) throw std::logic_error("trailing_coeff of zero polynomial");
  return terms_.front().second;
}

Integer Laurent::coeff(int exponent) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), exponent,
      [](const Term& t, int e) { return t.first < e; });
  if (it != terms_.end() && it->first == exponent) return it->second;
  return 0;
}

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

namespace {

template <bool Subtract>
std::vector<Laurent::Term> merge(const std::vector<Laurent::Term>& a,
                                 const std::vector<Laurent::Term>& b) {
  std::vector<Laurent::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, Subtract ? Integer(-b[j].second) : b[j].second);
      ++j;
    } else {
      Integer c = Subtract ? Integer(a[i].second - b[j].second)
                           : Integer(a[i].second + b[j].second);
      if (c != 0) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Laurent& Laurent::operator+=(const Laurent& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  terms_ = merge<false>(terms_, o.terms_);
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge<true>(terms_, o.terms_);
  return *this;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.terms_.size() == 1) {
    Laurent r = b;
    for (auto& t : r.terms_) {
      t.first += a.terms_[0].first;
      t.second *= a.terms_[0].second;
    }
    return r;
  }
  if (b.terms_.size() == 1) return b * a;
  const int lo = a.min_exp() + b.min_exp();
  const int hi = a.max_exp() + b.max_exp();
  std::vector<Integer> dense(static_cast<std::size_t>(hi - lo + 1));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      mpz_addmul(dense[static_cast<std::size_t>(ea + eb - lo)].get_mpz_t(),
                 ca.get_mpz_t(), cb.get_mpz_t());
    }
  }
  Laurent r;
  for (std::size_t k = 0; k < dense.size(); ++k) {
    if (dense[k] != 0) r.terms_.emplace_back(lo + static_cast<int>(k), std::move(dense[k]));
  }
  return r;
}

Laurent& Laurent::operator*=(const Laurent& o) { return *this = *this * o; }

Laurent Laurent::scaled(const Integer& c) const {
  if (c == 0) return {};
  Laurent r = *this;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

Laurent Laurent::shifted(int k) const {
  Laurent r = *this;
  for (auto& t : r.terms_) t.first += k;
  return r;
}

Laurent Laurent::substitute_inverse(int sign) const {
  Laurent r;
  r.terms_.reserve(terms_.size());
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    Integer c = it->second;
    if (sign < 0 && (it->first % 2 != 0)) c = -c;
    r.terms_.emplace_back(-it->first, std::move(c));
  }
  return r;
}

Laurent Laurent::substitute_sign(int sign) const {
  if (sign > 0) return *this;
  Laurent r = *this;
  for (auto& t : r.terms_) {
    if (t.first % 2 != 0) t.second = -t.second;
  }
  return r;
}

Laurent Laurent::pow(unsigned n) const {
  Laurent result(1);
  Laurent base = *this;
  while (n > 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n > 0) base *= base;
  }
  return result;
}

Integer Laurent::content() const {
  Integer g = 0;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.second.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Laurent Laurent::divided_exact(const Integer& c) const {
  if (c == 1) return *this;
  Laurent r = *this;
  for (auto& t : r.terms_) {
    if (!mpz_divisible_p(t.second.get_mpz_t(), c.get_mpz_t())) {
      throw std::logic_error("divided_exact: coefficient not divisible");
    }
    mpz_divexact(t.second.get_mpz_t(), t.second.get_mpz_t(), c.get_mpz_t());
  }
  return r;
}

std::optional<Laurent> Laurent::divide_exact(const Laurent& d) const {
  if (d.is_zero()) throw std::domain_error("division by zero polynomial");
  if (is_zero()) return Laurent{};
  if (d.terms_.size() == 1) {
    Laurent r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (!mpz_divisible_p(t.second.get_mpz_t(), d.terms_[0].second.get_mpz_t())) {
        return std::nullopt;
      }
      Integer c;
      mpz_divexact(c.get_mpz_t(), t.second.get_mpz_t(), d.terms_[0].second.get_mpz_t());
      r.terms_.emplace_back(t.first - d.terms_[0].first, std::move(c));
    }
    return r;
  }
  // Dense long division from the top degree.
  const int a_lo = min_exp(), a_hi = max_exp();
  const int d_lo = d.min_exp(), d_hi = d.max_exp();
  if (a_hi - a_lo < d_hi - d_lo) return std::nullopt;
  std::vector<Integer> rem(static_cast<std::size_t>(a_hi - a_lo + 1));
  for (const auto& [e, c] : terms_) rem[static_cast<std::size_t>(e - a_lo)] = c;
  const int dd = d_hi - d_lo;
  std::vector<Integer> quot(static_cast<std::size_t>(a_hi - a_lo - dd + 1));
  const Integer& lc = d.leading_coeff();
  for (int k = a_hi - a_lo; k >= dd; --k) {
    Integer& top = rem[static_cast<std::size_t>(k)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) return std::nullopt;
    Integer qc;
    mpz_divexact(qc.get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
    for (const auto& [e, c] : d.terms_) {
      mpz_submul(rem[static_cast<std::size_t>(k - dd + e - d_lo)].get_mpz_t(),
                 qc.get_mpz_t(), c.get_mpz_t());
    }
    quot[static_cast<std::size_t>(k - dd)] = std::move(qc);
  }
  for (const auto& c : rem) {
    if (c != 0) return std::nullopt;
  }
  Laurent r;
  for (std::size_t k = 0; k < quot.size(); ++k) {
    if (quot[k] != 0) {
      r.terms_.emplace_back(static_cast<int>(k) + a_lo - d_lo, std::move(quot[k]));
    }
  }
  return r;
}

Laurent Laurent::negative_part() const {
  Laurent r;
  for (const auto& t : terms_) {
    if (t.first < 0) r.terms_.push_back(t);
  }
  return r;
}

Laurent Laurent::positive_part() const {
  Laurent r;
  for (const auto& t : terms_) {
    if (t.first > 0) r.terms_.push_back(t);
  }
  return r;
}

bool Laurent::all_coefficients_nonnegative() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.second > 0; });
}

std::string Laurent::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << it->second.get_str();
    if (it->first != 0) os << "*q^" << it->first;
  }
  return os.str();
}

namespace poly {

Laurent primitive_part(const Laurent& a) {
  if (a.is_zero()) return a;
  Integer c = a.content();
  if (a.leading_coeff() < 0) c = -c;
  return a.divided_exact(c);
}

namespace {

// Pseudo-remainder of a by b (both ordinary polynomials, b nonzero); the
// result is made primitive since only its associate class matters here.
Laurent primitive_prem(Laurent a, const Laurent& b) {
  const int db = b.max_exp();
  const Integer& lb = b.leading_coeff();
  while (!a.is_zero() && a.max_exp() >= db) {
    const int shift = a.max_exp() - db;
    Integer la = a.leading_coeff();
    Integer g;
    mpz_gcd(g.get_mpz_t(), la.get_mpz_t(), lb.get_mpz_t());
    Integer ma = lb / g;
    Integer mb = la / g;
    a = a.scaled(ma) - b.shifted(shift).scaled(mb);
    if (!a.is_zero()) a = primitive_part(a);
  }
  return a;
}

}  // namespace

Laurent gcd(const Laurent& a, const Laurent& b) {
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  // Strip common powers of q; callers pass polynomials.
  const int za = a.min_exp(), zb = b.min_exp();
  const int z = std::min(za, zb);
  Laurent x = primitive_part(a.shifted(-za));
  Laurent y = primitive_part(b.shifted(-zb));
  if (x.max_exp() < y.max_exp()) std::swap(x, y);
  while (!y.is_zero()) {
    Laurent r = primitive_prem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return primitive_part(x).shifted(std::max(z, 0));
}

}  // namespace poly

}  // namespace qcover
