#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "qcover/pbw.hpp"
#include "qcover/rep.hpp"

namespace qcover {

/// E^(a) 1_n F^(b); the sector is n mod 2.
struct UDotMonomial {
  int a = 0;
  int n = 0;
  int b = 0;

  int left_weight() const { return n + 2 * a; }
  int right_weight() const { return n + 2 * b; }
  int sector() const { return n & 1; }
  int parity() const { return (a + b) & 1; }
  auto operator<=>(const UDotMonomial&) const = default;
};

std::string format_udot_monomial(const UDotMonomial& m);

/// Finite combination of EF-form monomials.
class UDotElement {
 public:
  using Map = std::map<UDotMonomial, PiRational>;

  UDotElement() = default;
  static UDotElement idempotent(int n) { return ef(0, n, 0); }
  /// E^(a) 1_n F^(b).
  static UDotElement ef(int a, int n, int b);
  /// F^(a) 1_n E^(b), rewritten into EF-form.
  static UDotElement fe(int a, int n, int b);

  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_integral() const;
  PiRational coeff(const UDotMonomial& m) const;
  void add_term(const UDotMonomial& m, const PiRational& c);

  UDotElement operator-() const;
  UDotElement& operator+=(const UDotElement& o);
  UDotElement& operator-=(const UDotElement& o);
  friend UDotElement operator+(UDotElement x, const UDotElement& y) { return x += y; }
  friend UDotElement operator-(UDotElement x, const UDotElement& y) { return x -= y; }
  friend UDotElement operator*(const UDotElement& x, const UDotElement& y);
  friend bool operator==(const UDotElement& x, const UDotElement& y) = default;
  UDotElement scaled(const PiRational& c) const;

 private:
  Map terms_;
};

/// u x v for PBW elements u, v.
UDotElement bimodule_act(const PBWElement& u, const UDotElement& x, const PBWElement& v);
/// Coefficients barred; 1_n, E^(a), F^(b) are fixed.
UDotElement bar(const UDotElement& x);
/// Induced (anti-)automorphisms: omega(1_n) = tau(1_n) = 1_{-n}, rho(1_n) = 1_n.
/// psi is the bar map.
UDotElement apply_morphism(Morphism m, const UDotElement& x);

/// E^(a) diamond_k F^(b).
struct CBIndex {
  int a = 0;
  int b = 0;
  int k = 0;
  auto operator<=>(const CBIndex&) const = default;
};

std::string format_cb_index(const CBIndex& i);
/// E^(a) 1_{k-2b} F^(b) when k <= b - a, else pi^{ab} F^(b) 1_{k+2a} E^(a).
UDotElement cb_element(const CBIndex& i);
/// Expansion in the canonical basis. Throws InternalError when an integral
/// input yields a non-integral coefficient.
std::map<CBIndex, PiRational> cb_expand(const UDotElement& x);
/// cb_expand(cb_element(i1) cb_element(i2)); throws InternalError when a
/// constant is not in N[q, q^-1, pi].
std::map<CBIndex, PiScalar> structure_constants(const CBIndex& i1, const CBIndex& i2);

/// x acting on a module whose K-eigenvalues are q^weight (1_n projects to
/// weight n).
ModuleVector act_on_module(const WeightModule& m, const UDotElement& x, const ModuleVector& v);
/// x (eta (x) nu) in ^omega L(s) (x) L(t).
ModuleVector act_on_tensor(const UDotElement& x, int s, int t);

/// Components over _aU_c (x) _bU_d.
using UDotTensor = std::map<std::pair<UDotMonomial, UDotMonomial>, PiRational>;
/// (p_{a,c} (x) p_{b,d}) Delta(x) for the block p_{a+b, c+d}(x).
UDotTensor coproduct_dot(const UDotElement& x, int a, int b, int c, int d);

enum class FormStrategy {
  /// strip E off the first argument, swap when it has none
  strip_e,
  /// first rewrite the first argument in FE-form and strip F, then strip_e
  strip_f_first,
};
/// The rho-contravariant bilinear form.
PiRational bilinear_form(const UDotElement& x, const UDotElement& y,
                         FormStrategy strategy = FormStrategy::strip_e);
/// (theta^(a), theta^(a)) on f.
PiRational f_form(int a);

std::string format_udot(const UDotElement& x);
/// Sums of "[(coeff) *] E^(a) 1_{n} F^(b)", "F^(b) 1_{n} E^(a)" and
/// "CB(a,b,k)" terms; E and F without exponent mean power 1.
UDotElement parse_udot(std::string_view text);

}  // namespace qcover
