#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcover/pbw.hpp"
#include "qcover/triangular.hpp"

namespace qcover {

/// Coefficients on the standard basis of a module, keyed by basis index.
using ModuleVector = std::map<std::size_t, PiRational>;

void add_to(ModuleVector& v, std::size_t i, const PiRational& c);
ModuleVector scaled(const ModuleVector& v, const PiRational& c);
ModuleVector operator+(ModuleVector a, const ModuleVector& b);
ModuleVector operator-(ModuleVector a, const ModuleVector& b);

/// Finite-dimensional weight module with exact generator actions.
///
/// Every basis vector v carries a sector (which of U_0, U_1 acts on it), a
/// parity, and a K-eigenvalue sign * q^weight. e_power(c, i) is the action of
/// E_{sector(i)}^(c) on basis vector i; E_{other}^(c) acts as zero.
class WeightModule {
 public:
  enum class Kind { simple, verma, twist, tensor };

  Kind kind() const { return kind_; }
  std::size_t dim() const { return weight_.size(); }
  int weight(std::size_t i) const { return weight_[i]; }
  int ksign(std::size_t i) const { return ksign_[i]; }
  int parity(std::size_t i) const { return parity_[i]; }
  int sector(std::size_t i) const { return sector_[i]; }
  const std::string& label(std::size_t i) const { return label_[i]; }
  const std::string& name() const { return name_; }

  /// Largest c with E^(c) or F^(c) possibly nonzero.
  int max_power() const { return static_cast<int>(e_.size()) - 1; }
  const ModuleVector& e_power(int c, std::size_t i) const;
  const ModuleVector& f_power(int c, std::size_t i) const;
  /// Eigenvalue of K^b on basis vector i.
  PiRational k_power(int b, std::size_t i) const;

  /// Factors of a tensor module (null otherwise); basis index is
  /// i * right->dim() + j.
  const std::shared_ptr<const WeightModule>& left() const { return left_; }
  const std::shared_ptr<const WeightModule>& right() const { return right_; }

  friend WeightModule simple_module(int n, int sign);
  friend WeightModule verma_truncated(int n, int sign, int sector, int cutoff);
  friend WeightModule omega_twist(const WeightModule& m);
  friend WeightModule tensor(const WeightModule& a, const WeightModule& b);

 private:
  using Table = std::vector<std::vector<ModuleVector>>;  // [power][basis]
  Kind kind_ = Kind::simple;
  std::string name_;
  std::vector<int> weight_, ksign_, parity_, sector_;
  std::vector<std::string> label_;
  Table e_, f_;
  std::shared_ptr<const WeightModule> left_, right_;
};

/// L(n, sign) with basis F^(j) nu, 0 <= j <= n, in sector n mod 2.
WeightModule simple_module(int n, int sign);
/// Verma module of highest weight sign * q^n for U_sector, truncated to
/// F^(k) nu with k <= cutoff.
WeightModule verma_truncated(int n, int sign, int sector, int cutoff);
/// Same space with u acting as omega(u).
WeightModule omega_twist(const WeightModule& m);
/// a (x) b with U acting through the coproduct and the super sign rule.
WeightModule tensor(const WeightModule& a, const WeightModule& b);
/// ^omega L(s) (x) L(t); basis index a * (t + 1) + b is E^(a) eta (x) F^(b) nu.
WeightModule tensor_lst(int s, int t);

ModuleVector act(const WeightModule& m, const PBWMonomial& u, std::size_t i);
ModuleVector act(const WeightModule& m, const PBWElement& u, const ModuleVector& v);
/// Action of a two-factor tensor element on a tensor module.
ModuleVector act_tensor(const WeightModule& m, const TensorElement& u, const ModuleVector& v);

/// Coefficients barred, standard basis fixed.
ModuleVector bar_vector(const ModuleVector& v);
/// sum_n a_n F^(n) (x) E^(n), or with barred coefficients when bar_coeffs.
ModuleVector theta_apply(const WeightModule& m, const ModuleVector& v, bool bar_coeffs = false);
/// Theta composed with the bar map.
ModuleVector psi_apply(const WeightModule& m, const ModuleVector& v);
/// Delta-bar(u) = bar o Delta o bar as a tensor element.
TensorElement bar_coproduct(const PBWElement& u);

/// b_n = sum_{i+j=n} pi^{ij} a_i bar(a_j) [n choose i]^2, the F^(n) (x) E^(n)
/// coefficient of Theta Theta-bar.
PiScalar theta_product_coeff(long n);

/// Scalar by which C^2 acts on L(n, +-):
/// ((pi q)^{n+1} + q^{-n-1})^2 / (pi q - q^-1)^4.
PiRational casimir_square_scalar(long n);
/// Matrix of C = C_0 + C_1 as images of basis vectors.
std::vector<ModuleVector> casimir_matrix(const WeightModule& m);
/// Isotypic content (n, multiplicity), n descending; computed at pi = +1 and
/// pi = -1 and cross-checked. Throws InternalError on an unmatched eigenvalue.
std::vector<std::pair<int, int>> casimir_decompose(const WeightModule& m);

/// Smallest t >= 1 with E F^(t) nu = 0 in a truncated Verma module.
std::optional<int> find_singular_vector(const WeightModule& verma);

/// Canonical basis of L(s,t).
struct TensorCB {
  int s = 0;
  int t = 0;
  /// (a, b) -> {(m, n) -> coefficient of E^(m) eta (x) F^(n) nu}
  std::map<std::pair<int, int>, std::map<std::pair<int, int>, PiScalar>> elements;
  /// (a, b) -> true when the closed coefficient formula was used.
  std::map<std::pair<int, int>, bool> closed_form;
};

/// Psi on L(s,t) in the basis E^(a) eta (x) F^(b) nu, ordered by
/// (a-j, b-j) < (a, b) for j >= 1.
TriangularSystem<PiScalar> tensor_psi_system(int s, int t);
/// Closed-form coefficient c^{s,t}_{a,b;a-j,b-j}.
PiScalar tensor_cb_coefficient(int s, int t, int a, int b, int j);
/// Canonical basis of L(s,t): closed form where s - a >= t - b, bar-triangular
/// solver elsewhere.
TensorCB tensor_cb(int s, int t);
/// Every element from the solver alone.
TensorCB tensor_cb_by_solver(int s, int t);
ModuleVector cb_vector(const TensorCB& cb, int a, int b);

}  // namespace qcover
