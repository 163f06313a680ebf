#include "qcover/rep.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>
#include <stdexcept>

#include "qcover/triangular.hpp"

namespace qcover {

void add_to(ModuleVector& v, std::size_t i, const PiRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = v.try_emplace(i, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
  }
}

ModuleVector scaled(const ModuleVector& v, const PiRational& c) {
  ModuleVector r;
  if (c.is_zero()) return r;
  for (const auto& [i, x] : v) add_to(r, i, x * c);
  return r;
}

ModuleVector operator+(ModuleVector a, const ModuleVector& b) {
  for (const auto& [i, x] : b) add_to(a, i, x);
  return a;
}

ModuleVector operator-(ModuleVector a, const ModuleVector& b) {
  for (const auto& [i, x] : b) add_to(a, i, -x);
  return a;
}

namespace {

const ModuleVector kZero;

long choose2(long n) { return n * (n - 1) / 2; }

std::string power_label(const char* gen, int j, const char* vec) {
  if (j == 0) return vec;
  return std::string(gen) + "^(" + std::to_string(j) + ")" + vec;
}

// Cyclic module on F^(j) nu, 0 <= j <= top; E^(r) given by a callback.
template <class EAction>
void fill_cyclic(int top, int hw, int sign, int sector, EAction e_coeff,
                 std::vector<int>& weight, std::vector<int>& ksign, std::vector<int>& parity,
                 std::vector<int>& sec, std::vector<std::string>& label,
                 std::vector<std::vector<ModuleVector>>& e, std::vector<std::vector<ModuleVector>>& f) {
  const std::size_t d = static_cast<std::size_t>(top) + 1;
  for (int j = 0; j <= top; ++j) {
    weight.push_back(hw - 2 * j);
    ksign.push_back(sign);
    parity.push_back(j & 1);
    sec.push_back(sector);
    label.push_back(power_label("F", j, "nu"));
  }
  e.assign(d, std::vector<ModuleVector>(d));
  f.assign(d, std::vector<ModuleVector>(d));
  for (int c = 0; c <= top; ++c)
    for (int j = 0; j <= top; ++j) {
      if (j + c <= top) add_to(f[c][j], j + c, PiRational(qbinom(j + c, c)));
      if (c <= j) add_to(e[c][j], j - c, e_coeff(c, j));
    }
}

}  // namespace

const ModuleVector& WeightModule::e_power(int c, std::size_t i) const {
  if (c < 0 || c > max_power()) return kZero;
  return e_[c][i];
}

const ModuleVector& WeightModule::f_power(int c, std::size_t i) const {
  if (c < 0 || c > max_power()) return kZero;
  return f_[c][i];
}

PiRational WeightModule::k_power(int b, std::size_t i) const {
  PiRational r = PiRational(PiScalar::q_power(b * weight_[i]));
  return (ksign_[i] < 0 && (b & 1)) ? -r : r;
}

WeightModule simple_module(int n, int sign) {
  if (n < 0) throw std::invalid_argument("simple_module: negative highest weight");
  if (sign != 1 && sign != -1) throw std::invalid_argument("simple_module: sign must be +1 or -1");
  WeightModule m;
  m.kind_ = WeightModule::Kind::simple;
  m.name_ = "L(" + std::to_string(n) + "," + (sign > 0 ? "+" : "-") + ")";
  // E^(r) F^(s) nu = pi^{rs + C(r+1,2)} sign^r [n+r-s choose r] F^(s-r) nu
  auto e_coeff = [&](int r, int s) {
    PiScalar c = qbinom(n + r - s, r).times_pi_power(static_cast<long>(r) * s + choose2(r + 1));
    return PiRational((sign < 0 && (r & 1)) ? -c : c);
  };
  fill_cyclic(n, n, sign, n & 1, e_coeff, m.weight_, m.ksign_, m.parity_, m.sector_, m.label_,
              m.e_, m.f_);
  return m;
}

namespace {

// E^(r) F^(s) in PBW form; independent of the highest weight, so shared.
const PBWElement& ef_product(int sector, int r, int s) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, PBWElement> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({sector, r, s});
  if (it == cache.end())
    it = cache.emplace(std::make_tuple(sector, r, s), PBWElement::E(sector, r) * PBWElement::F(sector, s)).first;
  return it->second;
}

}  // namespace

WeightModule verma_truncated(int n, int sign, int sector, int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("verma_truncated: cutoff must be positive");
  if (sign != 1 && sign != -1) throw std::invalid_argument("verma_truncated: sign must be +1 or -1");
  if (sector != 0 && sector != 1) throw std::invalid_argument("verma_truncated: sector must be 0 or 1");
  WeightModule m;
  m.kind_ = WeightModule::Kind::verma;
  m.name_ = "M(" + std::string(sign > 0 ? "" : "-") + "q^" + std::to_string(n) + ";" +
            std::to_string(sector) + ")";
  // Normal form of E^(r) F^(s), keeping the terms with no E on the right,
  // evaluated at K = sign q^n.
  auto e_coeff = [&](int r, int s) {
    const PBWElement& prod = ef_product(sector, r, s);
    // per pi-component, numerators over equal denominators are summed first
    RatFunc comp[2];
    for (int p = 0; p < 2; ++p) {
      std::vector<std::pair<Laurent, Laurent>> groups;  // (den, num)
      for (const auto& [mono, c] : prod.terms()) {
        if (mono.e != 0) continue;
        if (mono.f != s - r) throw InternalError("verma_truncated: unexpected weight in E^(r)F^(s)");
        const RatFunc& x = c.component(p == 0 ? 1 : -1);
        Laurent num = x.num().shifted(mono.k * n);
        if (sign < 0 && (mono.k & 1)) num = -num;
        auto g = std::find_if(groups.begin(), groups.end(), [&](const auto& e) { return e.first == x.den(); });
        if (g == groups.end())
          groups.emplace_back(x.den(), num);
        else
          g->second += num;
      }
      for (const auto& [den, num] : groups) comp[p] = comp[p] + RatFunc(num, den);
    }
    return PiRational::from_components(comp[0], comp[1]);
  };
  fill_cyclic(cutoff, n, sign, sector, e_coeff, m.weight_, m.ksign_, m.parity_, m.sector_,
              m.label_, m.e_, m.f_);
  return m;
}

WeightModule omega_twist(const WeightModule& inner) {
  WeightModule m = inner;
  m.kind_ = WeightModule::Kind::twist;
  m.name_ = "w" + inner.name_;
  m.left_.reset();
  m.right_.reset();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    m.weight_[i] = -inner.weight_[i];
    std::string& l = m.label_[i];
    if (inner.kind_ == WeightModule::Kind::simple || inner.kind_ == WeightModule::Kind::verma) {
      if (l.rfind("F^(", 0) == 0) l[0] = 'E';
      l.replace(l.size() - 2, 2, "eta");
    } else {
      l = "w[" + l + "]";
    }
  }
  // omega(E^(c)) = F^(c), omega(F^(a)) = pi^{a(1-e)} E^(a)
  m.e_ = inner.f_;
  m.f_ = inner.e_;
  for (int a = 1; a <= m.max_power(); ++a)
    for (std::size_t i = 0; i < m.dim(); ++i)
      if ((a & 1) && m.sector_[i] == 0) m.f_[a][i] = scaled(m.f_[a][i], PiRational(PiScalar::pi()));
  return m;
}

ModuleVector act(const WeightModule& m, const PBWMonomial& u, std::size_t i) {
  ModuleVector r;
  if (u.sector != m.sector(i)) return r;
  for (const auto& [j, c] : m.e_power(u.e, i)) {
    PiRational ck = c * m.k_power(u.k, j);
    for (const auto& [l, d] : m.f_power(u.f, j)) add_to(r, l, ck * d);
  }
  return r;
}

ModuleVector act(const WeightModule& m, const PBWElement& u, const ModuleVector& v) {
  ModuleVector r;
  for (const auto& [i, c] : v)
    for (const auto& [mono, k] : u.terms())
      for (const auto& [j, d] : act(m, mono, i)) add_to(r, j, c * k * d);
  return r;
}

namespace {

void require_tensor(const WeightModule& m, const char* what) {
  if (!m.left() || !m.right()) throw std::invalid_argument(std::string(what) + ": module is not a tensor product");
}

// u acting on a single basis vector (i, j) of left (x) right.
void act_tensor_basis(const WeightModule& l, const WeightModule& rt, const TensorElement& u,
                      std::size_t i, std::size_t j, const PiRational& c, ModuleVector& out) {
  const std::size_t dr = rt.dim();
  for (const auto& [key, k] : u.terms()) {
    if (key.size() != 2) throw std::invalid_argument("act_tensor: expected a two-factor tensor");
    if (key[0].sector != l.sector(i) || key[1].sector != rt.sector(j)) continue;
    ModuleVector x = act(l, key[0], i);
    if (x.empty()) continue;
    ModuleVector y = act(rt, key[1], j);
    if (y.empty()) continue;
    PiRational ck = (c * k).times_pi_power(static_cast<long>(key[1].parity()) * l.parity(i));
    for (const auto& [a, xa] : x)
      for (const auto& [b, yb] : y) add_to(out, a * dr + b, ck * xa * yb);
  }
}

}  // namespace

ModuleVector act_tensor(const WeightModule& m, const TensorElement& u, const ModuleVector& v) {
  require_tensor(m, "act_tensor");
  const WeightModule& l = *m.left();
  const WeightModule& rt = *m.right();
  ModuleVector out;
  for (const auto& [idx, c] : v) act_tensor_basis(l, rt, u, idx / rt.dim(), idx % rt.dim(), c, out);
  return out;
}

WeightModule tensor(const WeightModule& a, const WeightModule& b) {
  WeightModule m;
  m.kind_ = WeightModule::Kind::tensor;
  m.name_ = a.name_ + " (x) " + b.name_;
  m.left_ = std::make_shared<const WeightModule>(a);
  m.right_ = std::make_shared<const WeightModule>(b);
  const std::size_t da = a.dim(), db = b.dim(), d = da * db;
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) {
      m.weight_.push_back(a.weight(i) + b.weight(j));
      m.ksign_.push_back(a.ksign(i) * b.ksign(j));
      m.parity_.push_back((a.parity(i) + b.parity(j)) & 1);
      m.sector_.push_back((a.sector(i) + b.sector(j)) & 1);
      m.label_.push_back(a.label(i) + " (x) " + b.label(j));
    }
  const int top = std::max(0, a.max_power()) + std::max(0, b.max_power());
  m.e_.assign(top + 1, std::vector<ModuleVector>(d));
  m.f_.assign(top + 1, std::vector<ModuleVector>(d));
  for (std::size_t i = 0; i < d; ++i) {
    m.e_[0][i][i] = PiRational(1);
    m.f_[0][i][i] = PiRational(1);
  }
  for (int c = 1; c <= top; ++c)
    for (int s = 0; s < 2; ++s) {
      const TensorElement de = coproduct(PBWElement::E(s, c));
      const TensorElement df = coproduct(PBWElement::F(s, c));
      for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j) {
          if (((a.sector(i) + b.sector(j)) & 1) != s) continue;
          act_tensor_basis(a, b, de, i, j, PiRational(1), m.e_[c][i * db + j]);
          act_tensor_basis(a, b, df, i, j, PiRational(1), m.f_[c][i * db + j]);
        }
    }
  return m;
}

WeightModule tensor_lst(int s, int t) { return tensor(omega_twist(simple_module(s, 1)), simple_module(t, 1)); }

ModuleVector bar_vector(const ModuleVector& v) {
  ModuleVector r;
  for (const auto& [i, c] : v) add_to(r, i, bar(c));
  return r;
}

ModuleVector theta_apply(const WeightModule& m, const ModuleVector& v, bool bar_coeffs) {
  require_tensor(m, "theta_apply");
  const WeightModule& l = *m.left();
  const WeightModule& rt = *m.right();
  const std::size_t dr = rt.dim();
  // F^(n) (x) E^(n) vanishes once n exceeds either factor's range.
  const int top = std::min(l.max_power(), rt.max_power());
  std::vector<PiRational> coeff;
  for (int n = 0; n <= top; ++n) {
    PiScalar a = theta_coeff(n);
    coeff.emplace_back(bar_coeffs ? bar(a) : a);
  }
  ModuleVector out;
  for (const auto& [idx, c] : v) {
    const std::size_t i = idx / dr, j = idx % dr;
    for (int n = 0; n <= top; ++n) {
      const ModuleVector& x = l.f_power(n, i);
      if (x.empty()) continue;
      const ModuleVector& y = rt.e_power(n, j);
      if (y.empty()) continue;
      PiRational cn = (c * coeff[n]).times_pi_power(static_cast<long>(n) * l.parity(i));
      for (const auto& [a, xa] : x)
        for (const auto& [b, yb] : y) add_to(out, a * dr + b, cn * xa * yb);
    }
  }
  return out;
}

ModuleVector psi_apply(const WeightModule& m, const ModuleVector& v) {
  return theta_apply(m, bar_vector(v));
}

TensorElement bar_coproduct(const PBWElement& u) {
  return bar_tensor(coproduct(apply_morphism(Morphism::psi, u)));
}

PiScalar theta_product_coeff(long n) {
  PiScalar acc;
  for (long i = 0; i <= n; ++i) {
    const long j = n - i;
    PiScalar b = qbinom(n, i);
    acc += (theta_coeff(i) * bar(theta_coeff(j)) * b * b).times_pi_power(i * j);
  }
  return acc;
}

PiRational casimir_square_scalar(long n) {
  PiScalar num = PiScalar::monomial(1, static_cast<int>((n + 1) & 1), static_cast<int>(n + 1)) +
                 PiScalar::q_power(static_cast<int>(-n - 1));
  return PiRational::fraction(num * num, qdelta().pow(4));
}

std::vector<ModuleVector> casimir_matrix(const WeightModule& m) {
  const PBWElement c = casimir(0) + casimir(1);
  std::vector<ModuleVector> cols;
  for (std::size_t i = 0; i < m.dim(); ++i) cols.push_back(act(m, c, ModuleVector{{i, PiRational(1)}}));
  return cols;
}

namespace {

std::size_t rank_of(std::vector<std::vector<RatFunc>> a) {
  std::size_t rank = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const RatFunc inv = a[rank][c].inverse();
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a[r][c].is_zero()) continue;
      const RatFunc f = a[r][c] * inv;
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::vector<std::pair<int, int>> casimir_decompose(const WeightModule& m) {
  const std::vector<ModuleVector> c = casimir_matrix(m);
  std::vector<ModuleVector> c2;
  for (std::size_t i = 0; i < m.dim(); ++i) c2.push_back(act(m, casimir(0) + casimir(1), c[i]));

  std::map<int, std::vector<std::size_t>> spaces;
  int top = 0;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    spaces[m.weight(i)].push_back(i);
    top = std::max(top, std::abs(m.weight(i)));
  }
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (const auto& [j, x] : c2[i])
      if (m.weight(j) != m.weight(i)) throw InternalError("casimir_decompose: C^2 does not preserve weights");

  std::vector<std::pair<int, int>> result[2];
  for (int side = 0; side < 2; ++side) {
    const int sign = side == 0 ? 1 : -1;
    std::map<int, int> mult;
    for (const auto& [w, idx] : spaces) {
      const std::size_t d = idx.size();
      std::size_t found = 0;
      for (int n = std::abs(w); n <= top; n += 2) {
        const RatFunc cn = casimir_square_scalar(n).component(sign);
        std::vector<std::vector<RatFunc>> a(d, std::vector<RatFunc>(d));
        for (std::size_t col = 0; col < d; ++col) {
          for (std::size_t row = 0; row < d; ++row) {
            auto it = c2[idx[col]].find(idx[row]);
            if (it != c2[idx[col]].end()) a[row][col] = it->second.component(sign);
          }
          a[col][col] -= cn;
        }
        const std::size_t k = d - rank_of(a);
        found += k;
        if (n == w && k > 0) mult[n] = static_cast<int>(k);
      }
      if (found != d)
        throw InternalError("casimir_decompose: C^2 eigenvalue matching no simple module at weight " +
                            std::to_string(w));
    }
    for (auto it = mult.rbegin(); it != mult.rend(); ++it) result[side].push_back(*it);
  }
  if (result[0] != result[1])
    throw InternalError("casimir_decompose: specializations pi = +1 and pi = -1 disagree");
  std::size_t total = 0;
  for (const auto& [n, k] : result[0]) total += static_cast<std::size_t>(k) * (n + 1);
  if (total != m.dim()) throw InternalError("casimir_decompose: multiplicities do not account for the dimension");
  return result[0];
}

std::optional<int> find_singular_vector(const WeightModule& verma) {
  if (verma.kind() != WeightModule::Kind::verma)
    throw std::invalid_argument("find_singular_vector: expected a Verma module");
  for (std::size_t t = 1; t < verma.dim(); ++t)
    if (verma.e_power(1, t).empty()) return static_cast<int>(t);
  return std::nullopt;
}

PiScalar tensor_cb_coefficient(int s, int t, int a, int b, int j) {
  (void)a;
  const long pi_exp = static_cast<long>(s) * j + choose2(j + 1) - static_cast<long>(b) * j;
  return qbinom(j - b + t, j).times_pi_power(((pi_exp % 2) + 2) % 2).shifted(j * (a - j - s));
}

TriangularSystem<PiScalar> tensor_psi_system(int s, int t) {
  if (s < 0 || t < 0) throw std::invalid_argument("tensor_cb: negative highest weight");
  const WeightModule m = tensor_lst(s, t);
  const std::size_t dt = static_cast<std::size_t>(t) + 1;
  TriangularSystem<PiScalar> sys;
  sys.size = m.dim();
  sys.below.resize(sys.size);
  for (std::size_t h = 0; h < sys.size; ++h) {
    const int a = static_cast<int>(h / dt), b = static_cast<int>(h % dt);
    sys.labels.push_back("(" + std::to_string(a) + "," + std::to_string(b) + ")");
    sys.height.push_back(a + b);
    for (int j = 1; j <= std::min(a, b); ++j) sys.below[h].push_back((a - j) * dt + (b - j));
    for (const auto& [k, c] : psi_apply(m, ModuleVector{{h, PiRational(1)}})) {
      if (!c.is_integral()) throw InternalError("tensor_cb: Psi has a non-integral entry");
      sys.r[{k, h}] = c.to_scalar();
    }
  }
  return sys;
}

namespace {

TensorCB solve_lst(int s, int t, bool use_closed) {
  const std::size_t dt = static_cast<std::size_t>(t) + 1;
  const TriangularSystem<PiScalar> sys = tensor_psi_system(s, t);
  const auto solved = triangular_bar_solve(sys, PiScalarBar{});

  TensorCB out;
  out.s = s;
  out.t = t;
  for (int a = 0; a <= s; ++a)
    for (int b = 0; b <= t; ++b) {
      const std::size_t h = a * dt + b;
      std::map<std::pair<int, int>, PiScalar> from_solver;
      for (const auto& [k, c] : solved[h])
        from_solver[{static_cast<int>(k / dt), static_cast<int>(k % dt)}] = c;
      const bool closed = use_closed && s - a >= t - b;
      if (closed) {
        std::map<std::pair<int, int>, PiScalar> cf;
        for (int j = 0; j <= std::min(a, b); ++j) {
          PiScalar c = tensor_cb_coefficient(s, t, a, b, j);
          if (!c.is_zero()) cf[{a - j, b - j}] = c;
        }
        if (cf != from_solver)
          throw InternalError("tensor_cb: closed form and solver disagree at (" + std::to_string(a) + "," +
                              std::to_string(b) + ")");
        out.elements[{a, b}] = cf;
      } else {
        out.elements[{a, b}] = from_solver;
      }
      out.closed_form[{a, b}] = closed;
    }
  return out;
}

}  // namespace

TensorCB tensor_cb(int s, int t) { return solve_lst(s, t, true); }
TensorCB tensor_cb_by_solver(int s, int t) { return solve_lst(s, t, false); }

ModuleVector cb_vector(const TensorCB& cb, int a, int b) {
  auto it = cb.elements.find({a, b});
  if (it == cb.elements.end()) throw std::out_of_range("cb_vector: index outside the box");
  ModuleVector v;
  for (const auto& [mn, c] : it->second)
    add_to(v, static_cast<std::size_t>(mn.first) * (cb.t + 1) + mn.second, PiRational(c));
  return v;
}

}  // namespace qcover
