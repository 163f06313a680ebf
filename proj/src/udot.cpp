#include "qcover/udot.hpp"

#include <functional>
#include <mutex>
#include <stdexcept>

#include "qcover/text_cursor.hpp"

namespace qcover {

namespace {

long choose2(long n) { return n * (n - 1) / 2; }

PiRational pi_q(long pi_exp, int q_exp) {
  return PiRational(PiScalar::q_power(q_exp).times_pi_power(((pi_exp % 2) + 2) % 2));
}

// c * E^(al) [F^(s) 1_n E^(r)] F^(br) accumulated in EF-form:
// pi^{rs} F^(s) 1_n E^(r) = sum_i pi^{C(i,2) + e i} [r+s-n choose i] E^(r-i) 1_{n-2s-2r+2i} F^(s-i)
void fe_into(int al, int s, int n, int r, int br, const PiRational& c, UDotElement& out) {
  const long eps = n & 1;
  for (int i = 0; i <= std::min(r, s); ++i) {
    PiScalar bin = qbinom(static_cast<long>(r) + s - n, i);
    if (bin.is_zero()) continue;
    PiScalar k = bin.times_pi_power(static_cast<long>(r) * s + choose2(i) + eps * i) *
                 qbinom(al + r - i, al) * qbinom(s - i + br, br);
    out.add_term({al + r - i, n - 2 * s - 2 * r + 2 * i, s - i + br}, c * PiRational(k));
  }
}

// mono 1_L, or 1_L mono when idempotent_first, in EF-form.
UDotElement embed(const PBWMonomial& u, int L, bool idempotent_first) {
  UDotElement r;
  if (u.sector != (L & 1)) return r;
  const int n = idempotent_first ? L + 2 * u.f : L + 2 * u.e;
  fe_into(0, u.f, n, u.e, 0, PiRational(PiScalar::q_power(u.k * n)), r);
  return r;
}

UDotElement embed(const PBWElement& u, int L, bool idempotent_first) {
  UDotElement r;
  for (const auto& [m, c] : u.terms()) r += embed(m, L, idempotent_first).scaled(c);
  return r;
}

}  // namespace

std::string format_udot_monomial(const UDotMonomial& m) {
  std::string s;
  if (m.a > 0) s += "E^(" + std::to_string(m.a) + ") ";
  s += "1_{" + std::to_string(m.n) + "}";
  if (m.b > 0) s += " F^(" + std::to_string(m.b) + ")";
  return s;
}

UDotElement UDotElement::ef(int a, int n, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("negative divided power");
  UDotElement r;
  r.add_term({a, n, b}, PiRational(1));
  return r;
}

UDotElement UDotElement::fe(int a, int n, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("negative divided power");
  UDotElement r;
  fe_into(0, a, n, b, 0, PiRational(1), r);
  return r;
}

bool UDotElement::is_integral() const {
  for (const auto& [m, c] : terms_)
    if (!c.is_integral()) return false;
  return true;
}

PiRational UDotElement::coeff(const UDotMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? PiRational() : it->second;
}

void UDotElement::add_term(const UDotMonomial& m, const PiRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

UDotElement UDotElement::operator-() const { return scaled(PiRational(-1)); }

UDotElement& UDotElement::operator+=(const UDotElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

UDotElement& UDotElement::operator-=(const UDotElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

UDotElement UDotElement::scaled(const PiRational& c) const {
  UDotElement r;
  if (c.is_zero()) return r;
  for (const auto& [m, x] : terms_) r.add_term(m, x * c);
  return r;
}

UDotElement operator*(const UDotElement& x, const UDotElement& y) {
  UDotElement r;
  for (const auto& [m1, c1] : x.terms())
    for (const auto& [m2, c2] : y.terms()) {
      if (m1.right_weight() != m2.left_weight()) continue;
      fe_into(m1.a, m1.b, m1.right_weight(), m2.a, m2.b, c1 * c2, r);
    }
  return r;
}

UDotElement bimodule_act(const PBWElement& u, const UDotElement& x, const PBWElement& v) {
  UDotElement r;
  for (const auto& [m, c] : x.terms()) {
    UDotElement single;
    single.add_term(m, c);
    r += embed(u, m.left_weight(), false) * single * embed(v, m.right_weight(), true);
  }
  return r;
}

UDotElement bar(const UDotElement& x) {
  UDotElement r;
  for (const auto& [m, c] : x.terms()) r.add_term(m, bar(c));
  return r;
}

UDotElement apply_morphism(Morphism mor, const UDotElement& x) {
  if (mor == Morphism::psi) return bar(x);
  UDotElement r;
  for (const auto& [m, c] : x.terms()) {
    const int s = m.sector();
    PBWElement ea = apply_morphism(mor, PBWElement::E(s, m.a));
    PBWElement fb = apply_morphism(mor, PBWElement::F(s, m.b));
    const int n = mor == Morphism::rho ? m.n : -m.n;
    UDotElement one = UDotElement::idempotent(n);
    UDotElement img = (mor == Morphism::omega) ? bimodule_act(ea, one, fb) : bimodule_act(fb, one, ea);
    r += img.scaled(c);
  }
  return r;
}

std::string format_cb_index(const CBIndex& i) {
  return "CB(" + std::to_string(i.a) + "," + std::to_string(i.b) + "," + std::to_string(i.k) + ")";
}

UDotElement cb_element(const CBIndex& i) {
  if (i.a < 0 || i.b < 0) throw std::invalid_argument("cb_element: negative divided power");
  if (i.k <= i.b - i.a) return UDotElement::ef(i.a, i.k - 2 * i.b, i.b);
  return UDotElement::fe(i.b, i.k + 2 * i.a, i.a).scaled(pi_q(static_cast<long>(i.a) * i.b, 0));
}

std::map<CBIndex, PiRational> cb_expand(const UDotElement& x) {
  std::map<CBIndex, PiRational> out;
  auto add = [&](const CBIndex& i, const PiRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = out.try_emplace(i, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) out.erase(it);
    }
  };
  for (const auto& [m, c] : x.terms()) {
    const int n = -m.n, k = m.right_weight();
    if (n >= m.a + m.b) {
      add({m.a, m.b, k}, c);
      continue;
    }
    // pi^{ab} E^(a) 1_{-n} F^(b) = sum_i pi^{C(i+1,2)} [a+b-n choose i] F^(b-i) 1_{2a+2b-n-2i} E^(a-i)
    for (int i = 0; i <= std::min(m.a, m.b); ++i) {
      PiScalar bin = qbinom(m.a + m.b - n, i);
      if (bin.is_zero()) continue;
      const long p = static_cast<long>(m.a) * m.b + choose2(i + 1) + static_cast<long>(m.a - i) * (m.b - i);
      add({m.a - i, m.b - i, k}, c * PiRational(bin.times_pi_power(p)));
    }
  }
  if (x.is_integral())
    for (const auto& [i, c] : out)
      if (!c.is_integral()) throw InternalError("cb_expand: non-integral coefficient at " + format_cb_index(i));
  return out;
}

std::map<CBIndex, PiScalar> structure_constants(const CBIndex& i1, const CBIndex& i2) {
  std::map<CBIndex, PiScalar> out;
  for (const auto& [i, c] : cb_expand(cb_element(i1) * cb_element(i2))) {
    PiScalar s = c.to_scalar();
    if (!cone_membership(s, Cone::positive))
      throw InternalError("structure constant " + format_scalar(s) + " at " + format_cb_index(i) +
                          " is not positive");
    out.emplace(i, s);
  }
  return out;
}

ModuleVector act_on_module(const WeightModule& m, const UDotElement& x, const ModuleVector& v) {
  ModuleVector out;
  for (const auto& [i, c] : v) {
    if (m.ksign(i) != 1) throw std::invalid_argument("act_on_module: K must act by powers of q");
    for (const auto& [mono, k] : x.terms()) {
      if (m.weight(i) != mono.right_weight() || m.sector(i) != mono.sector()) continue;
      ModuleVector fv = act(m, PBWMonomial{mono.sector(), mono.b, 0, 0}, i);
      for (const auto& [j, d] : fv)
        for (const auto& [l, e] : act(m, PBWMonomial{mono.sector(), 0, 0, mono.a}, j)) add_to(out, l, c * k * d * e);
    }
  }
  return out;
}

ModuleVector act_on_tensor(const UDotElement& x, int s, int t) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const WeightModule>> cache;
  std::shared_ptr<const WeightModule> m;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{s, t}];
    if (!slot) slot = std::make_shared<const WeightModule>(tensor_lst(s, t));
    m = slot;
  }
  return act_on_module(*m, x, ModuleVector{{0, PiRational(1)}});
}

UDotTensor coproduct_dot(const UDotElement& x, int a, int b, int c, int d) {
  UDotTensor out;
  auto add = [&](const std::pair<UDotMonomial, UDotMonomial>& key, const PiRational& v) {
    if (v.is_zero()) return;
    auto [it, inserted] = out.try_emplace(key, v);
    if (!inserted) {
      it->second += v;
      if (it->second.is_zero()) out.erase(it);
    }
  };
  auto weight = [](const PBWMonomial& u) { return 2 * u.e - 2 * u.f; };
  for (const auto& [m, k] : x.terms()) {
    if (m.left_weight() != a + b || m.right_weight() != c + d) continue;
    const int s = m.sector();
    const TensorElement de = coproduct(PBWElement::E(s, m.a));
    const TensorElement df = coproduct(PBWElement::F(s, m.b));
    for (const auto& [xe, ce] : de.terms())
      for (const auto& [yf, cf] : df.terms()) {
        const int ml = c + weight(yf[0]), mr = d + weight(yf[1]);
        if (ml + mr != m.n || ml + weight(xe[0]) != a || mr + weight(xe[1]) != b) continue;
        PBWElement x1, x2, y1, y2;
        x1.add_term(xe[0], PiRational(1));
        x2.add_term(xe[1], PiRational(1));
        y1.add_term(yf[0], PiRational(1));
        y2.add_term(yf[1], PiRational(1));
        const UDotElement left = bimodule_act(x1, UDotElement::idempotent(ml), y1);
        const UDotElement right = bimodule_act(x2, UDotElement::idempotent(mr), y2);
        const PiRational coef =
            (k * ce * cf).times_pi_power(static_cast<long>(xe[1].parity()) * yf[0].parity());
        for (const auto& [l, lc] : left.terms())
          for (const auto& [r, rc] : right.terms()) add({l, r}, coef * lc * rc);
      }
  }
  return out;
}

PiRational f_form(int a) {
  PiScalar num = PiScalar::q_power(static_cast<int>(choose2(a + 1))).times_pi_power(a & 1);
  return PiRational::fraction(num, qdelta().pow(a) * qfact(a));
}

namespace {

using FormCache = std::map<std::pair<UDotMonomial, UDotMonomial>, PiRational>;

PiRational form_strip_e(const UDotMonomial& x, const UDotMonomial& y, FormCache& cache);

PiRational form_strip_e(const UDotElement& x, const UDotMonomial& y, FormCache& cache) {
  PiRational r;
  for (const auto& [m, c] : x.terms()) r += c * form_strip_e(m, y, cache);
  return r;
}

// (u x, y) = (x, rho(u) y) with u = E^(a) of the first argument.
PiRational strip_left(const PBWElement& u, const UDotElement& rest, const UDotMonomial& y,
                      int degree_before, FormCache& cache) {
  UDotElement yy;
  yy.add_term(y, PiRational(1));
  const UDotElement z = bimodule_act(apply_morphism(Morphism::rho, u), yy, PBWElement::one());
  PiRational r;
  for (const auto& [zm, zc] : z.terms())
    for (const auto& [xm, xc] : rest.terms()) {
      if (xm.a + zm.a >= degree_before) throw InternalError("bilinear_form: recursion does not reduce degree");
      r += zc * xc * form_strip_e(zm, xm, cache);
    }
  return r;
}

PiRational form_strip_e(const UDotMonomial& x, const UDotMonomial& y, FormCache& cache) {
  if (x.left_weight() != y.left_weight() || x.right_weight() != y.right_weight()) return {};
  auto it = cache.find({x, y});
  if (it != cache.end()) return it->second;
  PiRational r;
  if (x.a == 0 && y.a == 0) {
    // same blocks and no E: x = y = F^(b) 1_{right}
    r = f_form(x.b);
  } else if (x.a == 0) {
    r = form_strip_e(y, x, cache);
  } else {
    r = strip_left(PBWElement::E(x.sector(), x.a), UDotElement::ef(0, x.n, x.b), y, x.a + y.a, cache);
  }
  cache.emplace(std::make_pair(x, y), r);
  return r;
}

PiRational form_strip_f_first(const UDotMonomial& x, const UDotMonomial& y, FormCache& cache) {
  if (x.left_weight() != y.left_weight() || x.right_weight() != y.right_weight()) return {};
  // pi^{ab} E^(a) 1_m F^(b) = sum_i pi^{C(i+1,2)} [m+a+b choose i] F^(b-i) 1_{m+2a+2b-2i} E^(a-i)
  PiRational r;
  UDotElement yy;
  yy.add_term(y, PiRational(1));
  for (int i = 0; i <= std::min(x.a, x.b); ++i) {
    PiScalar bin = qbinom(static_cast<long>(x.n) + x.a + x.b, i);
    if (bin.is_zero()) continue;
    const PiRational c = PiRational(bin.times_pi_power(static_cast<long>(x.a) * x.b + choose2(i + 1)));
    const int beta = x.b - i, alpha = x.a - i, n = x.n + 2 * x.a + 2 * x.b - 2 * i;
    const UDotElement rest = UDotElement::ef(alpha, n - 2 * alpha, 0);
    const UDotElement z =
        bimodule_act(apply_morphism(Morphism::rho, PBWElement::F(n & 1, beta)), yy, PBWElement::one());
    for (const auto& [zm, zc] : z.terms())
      for (const auto& [rm, rc] : rest.terms()) r += c * zc * rc * form_strip_e(rm, zm, cache);
  }
  return r;
}

}  // namespace

PiRational bilinear_form(const UDotElement& x, const UDotElement& y, FormStrategy strategy) {
  FormCache cache;
  PiRational r;
  for (const auto& [mx, cx] : x.terms())
    for (const auto& [my, cy] : y.terms()) {
      PiRational v = strategy == FormStrategy::strip_e ? form_strip_e(mx, my, cache)
                                                       : form_strip_f_first(mx, my, cache);
      r += cx * cy * v;
    }
  return r;
}

std::string format_udot(const UDotElement& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : x.terms()) {
    if (!out.empty()) out += " + ";
    out += detail::coefficient_prefix(c) + format_udot_monomial(m);
  }
  return out;
}

namespace {

int parse_power(detail::Cursor& cur) {
  if (!cur.accept('^')) return 1;
  const bool paren = cur.accept('(');
  long v = cur.small_integer();
  if (paren) cur.expect(')');
  if (v < 0) cur.fail("negative divided power");
  return static_cast<int>(v);
}

UDotElement parse_udot_term(detail::Cursor& cur) {
  PiRational coeff(1);
  if (auto c = detail::parse_coefficient(cur)) coeff = *c;
  if (cur.accept("CB")) {
    cur.expect('(');
    CBIndex i;
    i.a = static_cast<int>(cur.small_integer());
    cur.expect(',');
    i.b = static_cast<int>(cur.small_integer());
    cur.expect(',');
    i.k = static_cast<int>(cur.small_integer());
    cur.expect(')');
    if (i.a < 0 || i.b < 0) cur.fail("negative divided power");
    return cb_element(i).scaled(coeff);
  }
  struct Factor {
    char gen;
    int power;
  };
  std::vector<Factor> left, right;
  std::optional<int> idem;
  for (;;) {
    char c = cur.peek();
    if (c == 'E' || c == 'F') {
      cur.accept(c);
      (idem ? right : left).push_back({c, parse_power(cur)});
    } else if (c == 'K') {
      cur.accept(c);
      int p = 1;
      if (cur.accept('^')) {
        const bool paren = cur.accept('(');
        p = static_cast<int>(cur.small_integer());
        if (paren) cur.expect(')');
      }
      (idem ? right : left).push_back({c, p});
    } else if (c == '1' && cur.pos + 1 < cur.text.size() && cur.text[cur.pos + 1] == '_') {
      if (idem) cur.fail("second idempotent in a word");
      cur.pos += 2;
      const bool brace = cur.accept('{');
      idem = static_cast<int>(cur.small_integer());
      if (brace) cur.expect('}');
    } else {
      break;
    }
  }
  if (!idem) cur.fail("expected an idempotent 1_{n} or CB(a,b,k)");
  const int s = *idem & 1;
  auto word = [&](const std::vector<Factor>& fs) {
    PBWElement u = PBWElement::idempotent(s);
    for (const auto& f : fs) {
      if (f.gen == 'E') u = u * PBWElement::E(s, f.power);
      if (f.gen == 'F') u = u * PBWElement::F(s, f.power);
      if (f.gen == 'K') u = u * PBWElement::K(s, f.power);
    }
    return u;
  };
  return bimodule_act(word(left), UDotElement::idempotent(*idem), word(right)).scaled(coeff);
}

}  // namespace

UDotElement parse_udot(std::string_view text) {
  detail::Cursor cur{text};
  if (text.find_first_not_of(" \t0") == std::string_view::npos && !text.empty()) return {};
  UDotElement r;
  bool negate = false;
  for (;;) {
    if (cur.accept('-')) negate = !negate;
    UDotElement t = parse_udot_term(cur);
    r += negate ? -t : t;
    negate = false;
    if (cur.accept('+')) continue;
    if (cur.peek() == '-') continue;
    break;
  }
  if (!cur.at_end()) cur.fail("unexpected trailing input");
  return r;
}

}  // namespace qcover
