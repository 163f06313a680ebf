#include "qcover/cb_engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace qcover {

SpecializedUDot specialize_udot(const UDotElement& x, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("specialize_udot: sign must be +1 or -1");
  SpecializedUDot r;
  r.pi = sign;
  for (const auto& [m, c] : x.terms()) {
    RatFunc v = c.component(sign);
    if (!v.is_zero()) r.terms.emplace(m, v);
  }
  return r;
}

std::string format_specialized(const SpecializedUDot& x) {
  if (x.terms.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : x.terms) {
    if (!out.empty()) out += " + ";
    if (!(c == RatFunc(1))) out += "(" + format_ratfunc(c) + ") * ";
    out += format_udot_monomial(m);
  }
  return out;
}

TriangularSystem<Laurent> specialize_system(const TriangularSystem<PiScalar>& sys, int sign) {
  TriangularSystem<Laurent> r;
  r.size = sys.size;
  r.labels = sys.labels;
  r.height = sys.height;
  r.below = sys.below;
  for (const auto& [k, v] : sys.r) {
    Laurent x = specialize(v, sign);
    if (!x.is_zero()) r.r.emplace(k, x);
  }
  return r;
}

std::vector<std::map<std::size_t, Laurent>> specialize_solution(
    const std::vector<std::map<std::size_t, PiScalar>>& sol, int sign) {
  std::vector<std::map<std::size_t, Laurent>> r(sol.size());
  for (std::size_t i = 0; i < sol.size(); ++i)
    for (const auto& [k, v] : sol[i]) {
      Laurent x = specialize(v, sign);
      if (!x.is_zero()) r[i].emplace(k, x);
    }
  return r;
}

namespace {

// Everything below works in Z[q, q^-1] with pi a fixed sign; nothing from the
// covering-level modules is reused.
class NativeLst {
 public:
  using Vec = std::map<std::pair<int, int>, Laurent>;  // (x, y): E^(x) eta (x) F^(y) nu

  NativeLst(int s, int t, int pi) : s_(s), t_(t), pi_(pi) {}

  Laurent sgn(long e) const { return (pi_ < 0 && (e & 1)) ? Laurent(-1) : Laurent(1); }
  Laurent qint(long n) const {
    if (n == 0) return {};
    const Laurent d = Laurent::monomial(pi_, 1) - Laurent::q_power(-1);
    Laurent num = sgn(n) * Laurent::q_power(static_cast<int>(n)) - Laurent::q_power(static_cast<int>(-n));
    auto r = num.divide_exact(d);
    if (!r) throw InternalError("native [n] is not a Laurent polynomial");
    return *r;
  }
  Laurent qfact(long n) const {
    Laurent r(1);
    for (long i = 1; i <= n; ++i) r *= qint(i);
    return r;
  }

  static void add(Vec& v, std::pair<int, int> k, const Laurent& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = v.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) v.erase(it);
    }
  }

  // single generators on ^omega L(s) and L(t)
  void e_left(int x, const Laurent& c, std::vector<std::pair<int, Laurent>>& out) const {
    if (x + 1 <= s_) out.push_back({x + 1, c * qint(x + 1)});
  }
  void f_left(int x, const Laurent& c, std::vector<std::pair<int, Laurent>>& out) const {
    // pi^{1-e} times E on F^(x) nu_s: pi^{x+1} [s+1-x]
    if (x >= 1) out.push_back({x - 1, c * sgn((1 - (s_ & 1)) + x + 1) * qint(s_ + 1 - x)});
  }
  void e_right(int y, const Laurent& c, std::vector<std::pair<int, Laurent>>& out) const {
    if (y >= 1) out.push_back({y - 1, c * sgn(y + 1) * qint(t_ + 1 - y)});
  }
  void f_right(int y, const Laurent& c, std::vector<std::pair<int, Laurent>>& out) const {
    if (y + 1 <= t_) out.push_back({y + 1, c * qint(y + 1)});
  }

  // E = E (x) 1 + pi^{e1} K (x) E, F = F (x) K^-1 + 1 (x) F, super sign pi^{p(y)p(m)}
  Vec E(const Vec& v) const {
    Vec r;
    for (const auto& [xy, c] : v) {
      const auto [x, y] = xy;
      std::vector<std::pair<int, Laurent>> o;
      e_left(x, c, o);
      for (const auto& [x2, c2] : o) add(r, {x2, y}, c2);
      o.clear();
      e_right(y, c * sgn((s_ & 1) + x) * Laurent::q_power(-s_ + 2 * x), o);
      for (const auto& [y2, c2] : o) add(r, {x, y2}, c2);
    }
    return r;
  }
  Vec F(const Vec& v) const {
    Vec r;
    for (const auto& [xy, c] : v) {
      const auto [x, y] = xy;
      std::vector<std::pair<int, Laurent>> o;
      f_left(x, c * Laurent::q_power(-(t_ - 2 * y)), o);
      for (const auto& [x2, c2] : o) add(r, {x2, y}, c2);
      o.clear();
      f_right(y, c * sgn(x), o);
      for (const auto& [y2, c2] : o) add(r, {x, y2}, c2);
    }
    return r;
  }
  Vec divided(Vec v, int n, bool e) const {
    for (int i = 0; i < n; ++i) v = e ? E(v) : F(v);
    const Laurent f = qfact(n);
    Vec r;
    for (const auto& [k, c] : v) {
      auto d = c.divide_exact(f);
      if (!d) throw InternalError("native divided power is not integral");
      r.emplace(k, *d);
    }
    return r;
  }

  // Theta on a basis vector: sum_n a_n pi^{n x} F^(n) (x) E^(n)
  Vec theta(int x, int y) const {
    Vec r;
    const Laurent d = Laurent::monomial(pi_, 1) - Laurent::q_power(-1);
    for (int n = 0; n <= std::min(x, y); ++n) {
      const long c2 = static_cast<long>(n) * (n - 1) / 2;
      Laurent an = qfact(n) * sgn(c2) * Laurent::q_power(static_cast<int>(-c2)) * d.pow(n);
      if (n & 1) an = -an;
      an *= sgn(static_cast<long>(n) * x);
      // F^(n) on E^(x) eta and E^(n) on F^(y) nu
      Laurent fl(1), er(1);
      for (int i = 0; i < n; ++i) {
        fl *= sgn((1 - (s_ & 1)) + (x - i) + 1) * qint(s_ + 1 - (x - i));
        er *= sgn((y - i) + 1) * qint(t_ + 1 - (y - i));
      }
      auto fd = fl.divide_exact(qfact(n));
      auto ed = er.divide_exact(qfact(n));
      if (!fd || !ed) throw InternalError("native Theta is not integral");
      add(r, {x - n, y - n}, an * *fd * *ed);
    }
    return r;
  }

  std::vector<std::map<std::size_t, Laurent>> canonical_basis() const {
    const std::size_t dt = static_cast<std::size_t>(t_) + 1;
    TriangularSystem<Laurent> sys;
    sys.size = static_cast<std::size_t>(s_ + 1) * dt;
    sys.below.resize(sys.size);
    for (int x = 0; x <= s_; ++x)
      for (int y = 0; y <= t_; ++y) {
        const std::size_t h = x * dt + y;
        sys.labels.push_back("(" + std::to_string(x) + "," + std::to_string(y) + ")");
        sys.height.push_back(x + y);
        for (int j = 1; j <= std::min(x, y); ++j) sys.below[h].push_back((x - j) * dt + (y - j));
        for (const auto& [k, c] : theta(x, y)) sys.r[{k.first * dt + k.second, h}] = c;
      }
    return triangular_bar_solve(sys, SignedBar{pi_});
  }

  int s() const { return s_; }
  int t() const { return t_; }

 private:
  int s_, t_, pi_;
};

}  // namespace

std::map<CBIndex, SpecializedUDot> sl2_cb_oracle_at(int B, int k, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sl2_cb_oracle: sign must be +1 or -1");
  std::map<CBIndex, SpecializedUDot> out;
  std::map<std::pair<int, int>, std::vector<std::map<std::size_t, Laurent>>> cache;
  for (int a = 0; a <= B; ++a)
    for (int b = 0; b <= B; ++b) {
      const int s = std::max({a, b - k, -k, 0}) + 1, t = s + k;
      const NativeLst lst(s, t, sign);
      auto& cbs = cache[{s, t}];
      if (cbs.empty()) cbs = lst.canonical_basis();
      const std::size_t dt = static_cast<std::size_t>(t) + 1;
      NativeLst::Vec residual;
      for (const auto& [h, c] : cbs[a * dt + b])
        residual.emplace(std::make_pair(static_cast<int>(h / dt), static_cast<int>(h % dt)), c);
      SpecializedUDot x;
      x.pi = sign;
      const NativeLst::Vec start = {{{0, 0}, Laurent(1)}};
      for (int i = 0; i <= std::min(a, b); ++i) {
        const int al = a - i, be = b - i;
        auto it = residual.find({al, be});
        if (it == residual.end()) continue;
        const Laurent c = it->second;
        x.terms.emplace(UDotMonomial{al, k - 2 * be, be}, RatFunc(c));
        for (const auto& [key, v] : lst.divided(lst.divided(start, be, false), al, true))
          NativeLst::add(residual, key, -(c * v));
      }
      if (!residual.empty())
        throw InternalError("sl2_cb_oracle: canonical basis vector not reached at " +
                            format_cb_index({a, b, k}));
      out.emplace(CBIndex{a, b, k}, std::move(x));
    }
  return out;
}

std::map<CBIndex, SpecializedUDot> sl2_cb_oracle(int B, int K, int sign) {
  std::map<CBIndex, SpecializedUDot> out;
  for (int k = -K; k <= K; ++k) out.merge(sl2_cb_oracle_at(B, k, sign));
  return out;
}

}  // namespace qcover
