#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcover/pi_ring.hpp"

namespace qcover {

/// F_e^(f) K_e^k E_e^(e) in sector e (divided powers).
struct PBWMonomial {
  int sector = 0;
  int f = 0;
  int k = 0;
  int e = 0;

  int weight() const { return 2 * e - 2 * f; }
  int parity() const { return (f + e) & 1; }
  auto operator<=>(const PBWMonomial&) const = default;
};

std::string format_monomial(const PBWMonomial& m);

/// Finite combination of PBW monomials with PiRational coefficients; always
/// in normal form.
class PBWElement {
 public:
  using Map = std::map<PBWMonomial, PiRational>;

  PBWElement() = default;
  explicit PBWElement(Map terms);

  /// Throws std::invalid_argument when f or e is negative or the sector is not 0/1.
  static PBWElement monomial(int sector, int f, int k, int e);
  static PBWElement idempotent(int sector) { return monomial(sector, 0, 0, 0); }
  /// e_0 + e_1.
  static PBWElement one();
  static PBWElement E(int sector, int power = 1) { return monomial(sector, 0, 0, power); }
  static PBWElement F(int sector, int power = 1) { return monomial(sector, power, 0, 0); }
  static PBWElement K(int sector, int power = 1) { return monomial(sector, 0, power, 0); }

  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// All coefficients lie in Z[q, q^-1][pi].
  bool is_integral() const;
  PiRational coeff(const PBWMonomial& m) const;

  void add_term(const PBWMonomial& m, const PiRational& c);

  PBWElement operator-() const;
  PBWElement& operator+=(const PBWElement& o);
  PBWElement& operator-=(const PBWElement& o);
  friend PBWElement operator+(PBWElement a, const PBWElement& b) { return a += b; }
  friend PBWElement operator-(PBWElement a, const PBWElement& b) { return a -= b; }
  friend PBWElement operator*(const PBWElement& a, const PBWElement& b);
  friend PBWElement operator*(const PiRational& c, const PBWElement& x) { return x.scaled(c); }
  friend bool operator==(const PBWElement& a, const PBWElement& b) = default;

  PBWElement scaled(const PiRational& c) const;
  PBWElement pow(unsigned n) const;

 private:
  Map terms_;
};

/// Product of two monomials, accumulated into out with the given factor.
void multiply_monomials(const PBWMonomial& x, const PBWMonomial& y, const PiRational& c,
                        PBWElement::Map& out);

/// Expansion of [K_e; n choose a] as coefficients of K^j.
const std::vector<std::pair<int, PiRational>>& k_binom_terms(int sector, long n, long a);
PBWElement k_bracket(int sector, long n);
PBWElement k_binom(int sector, long n, long a);

enum class Morphism { psi, omega, tau, rho };
std::optional<Morphism> parse_morphism(std::string_view name);
const char* morphism_name(Morphism m);
PBWElement apply_morphism(Morphism m, const PBWElement& x);

/// pi F E + (pi^{1-e} K q + K^-1 q^-1)/(pi q - q^-1)^2.
PBWElement casimir(int sector);
/// The same element from E F + (pi^e K q^-1 + pi K^-1 q)/(pi q - q^-1)^2.
PBWElement casimir_ef_form(int sector);

/// Tensor of PBW elements, any number of factors; multiplication follows the
/// super sign rule (a (x) b)(c (x) d) = pi^{p(b)p(c)} ac (x) bd.
class TensorElement {
 public:
  using Key = std::vector<PBWMonomial>;
  using Map = std::map<Key, PiRational>;

  TensorElement() = default;
  static TensorElement pure(const std::vector<PBWElement>& factors);

  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const Key& k, const PiRational& c);

  TensorElement& operator+=(const TensorElement& o);
  TensorElement& operator-=(const TensorElement& o);
  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
  friend TensorElement operator*(const TensorElement& a, const TensorElement& b);
  friend bool operator==(const TensorElement& a, const TensorElement& b) = default;
  TensorElement scaled(const PiRational& c) const;

 private:
  Map terms_;
};

/// Coproduct; divided powers use the closed formulas.
TensorElement coproduct(const PBWElement& x);
/// Apply the coproduct to one tensor factor.
TensorElement coproduct_at(const TensorElement& x, std::size_t position);
/// psi on every factor (antilinear once).
TensorElement bar_tensor(const TensorElement& x);
PiRational counit(const PBWElement& x);
PBWElement antipode(const PBWElement& x);
/// m o (S (x) 1) (left = true) or m o (1 (x) S) applied to a two-factor tensor.
PBWElement antipode_contract(const TensorElement& x, bool left);

std::string format_element(const PBWElement& x);
std::string format_tensor(const TensorElement& x);
/// Parses sums of words in e0/e1, E0/E1, F0/F1, K0/K1 with powers; words are
/// multiplied out, so any order is accepted.
PBWElement parse_element(std::string_view text);

}  // namespace qcover
