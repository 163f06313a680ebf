#include "qcover/pbw.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "qcover/text_cursor.hpp"

namespace qcover {

namespace {

long binom2(long n) { return n * (n - 1) / 2; }

// pi^p q^e as a ring element.
PiScalar pq(long p, long e) { return PiScalar::monomial(1, static_cast<int>(p & 1), static_cast<int>(e)); }

void accumulate(PBWElement::Map& out, const PBWMonomial& m, const PiRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = out.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) out.erase(it);
  }
}

}  // namespace

std::string format_monomial(const PBWMonomial& m) {
  std::string out;
  const std::string s = std::to_string(m.sector);
  auto append = [&out](const std::string& t) {
    if (!out.empty()) out += ' ';
    out += t;
  };
  if (m.f == 1) append("F" + s);
  if (m.f > 1) append("F" + s + "^(" + std::to_string(m.f) + ")");
  if (m.k == 1) append("K" + s);
  if (m.k != 0 && m.k != 1) append("K" + s + "^" + std::to_string(m.k));
  if (m.e == 1) append("E" + s);
  if (m.e > 1) append("E" + s + "^(" + std::to_string(m.e) + ")");
  if (out.empty()) out = "e" + s;
  return out;
}

// PBWElement

PBWElement::PBWElement(Map terms) : terms_(std::move(terms)) {
  std::erase_if(terms_, [](const auto& kv) { return kv.second.is_zero(); });
}

PBWElement PBWElement::monomial(int sector, int f, int k, int e) {
  if (sector != 0 && sector != 1) throw std::invalid_argument("sector must be 0 or 1");
  if (f < 0 || e < 0) throw std::invalid_argument("divided-power exponents must be nonnegative");
  PBWElement x;
  x.terms_.emplace(PBWMonomial{sector, f, k, e}, PiRational(1));
  return x;
}

PBWElement PBWElement::one() { return idempotent(0) + idempotent(1); }

bool PBWElement::is_integral() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& kv) { return kv.second.is_integral(); });
}

PiRational PBWElement::coeff(const PBWMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? PiRational() : it->second;
}

void PBWElement::add_term(const PBWMonomial& m, const PiRational& c) { accumulate(terms_, m, c); }

PBWElement PBWElement::operator-() const {
  PBWElement r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

PBWElement& PBWElement::operator+=(const PBWElement& o) {
  for (const auto& [m, c] : o.terms_) accumulate(terms_, m, c);
  return *this;
}

PBWElement& PBWElement::operator-=(const PBWElement& o) {
  for (const auto& [m, c] : o.terms_) accumulate(terms_, m, -c);
  return *this;
}

PBWElement PBWElement::scaled(const PiRational& c) const {
  PBWElement r;
  if (c.is_zero()) return r;
  for (const auto& [m, x] : terms_) accumulate(r.terms_, m, x * c);
  return r;
}

PBWElement PBWElement::pow(unsigned n) const {
  PBWElement r = one();
  for (unsigned i = 0; i < n; ++i) r = r * *this;
  return r;
}

// [K;n choose a] = prod_{j=1}^a [K; n+j-a] / [a]!, with
// [K;m] = ((pi q)^m pi^e K - q^-m K^-1)/(pi q - q^-1).
const std::vector<std::pair<int, PiRational>>& k_binom_terms(int sector, long n, long a) {
  static std::mutex mu;
  static std::map<std::tuple<int, long, long>, std::vector<std::pair<int, PiRational>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(sector, n, a);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  std::map<int, PiScalar> num{{0, PiScalar(1)}};
  for (long j = 1; j <= a; ++j) {
    const long m = n + j - a;
    std::map<int, PiScalar> next;
    const PiScalar up = pq(m + sector, m);
    const PiScalar down = -pq(0, -m);
    for (const auto& [kp, c] : num) {
      next[kp + 1] += c * up;
      next[kp - 1] += c * down;
    }
    num.clear();
    for (auto& [kp, c] : next) {
      if (!c.is_zero()) num.emplace(kp, std::move(c));
    }
  }
  const PiScalar den = qdelta().pow(static_cast<unsigned>(a)) * qfact(a);
  std::vector<std::pair<int, PiRational>> terms;
  for (const auto& [kp, c] : num) terms.emplace_back(kp, PiRational::fraction(c, den));
  return cache.emplace(key, std::move(terms)).first->second;
}

PBWElement k_binom(int sector, long n, long a) {
  if (a < 0) throw std::invalid_argument("k_binom needs a >= 0");
  PBWElement x;
  for (const auto& [kp, c] : k_binom_terms(sector, n, a)) x.add_term({sector, 0, kp, 0}, c);
  return x;
}

PBWElement k_bracket(int sector, long n) { return k_binom(sector, n, 1); }

// (F^(a1) K^b1 E^(c1)) (F^(a2) K^b2 E^(c2)): reorder the middle E^(c1) F^(a2)
// with the divided-power commutation formula, then merge.
void multiply_monomials(const PBWMonomial& x, const PBWMonomial& y, const PiRational& c,
                        PBWElement::Map& out) {
  if (x.sector != y.sector || c.is_zero()) return;
  const int eps = x.sector;
  const long a1 = x.f, b1 = x.k, c1 = x.e, a2 = y.f, b2 = y.k, c2 = y.e;
  const long top = std::min(c1, a2);
  for (long i = 0; i <= top; ++i) {
    PiScalar s = pq(c1 * a2 + binom2(i + 1), -2 * b1 * (a2 - i) - 2 * b2 * (c1 - i));
    s *= qbinom(a1 + a2 - i, a1);
    s *= qbinom(c1 - i + c2, c2);
    const PiRational sc = c * PiRational(s);
    const int f = static_cast<int>(a1 + a2 - i), e = static_cast<int>(c1 - i + c2);
    if (i == 0) {
      accumulate(out, {eps, f, static_cast<int>(b1 + b2), e}, sc);
      continue;
    }
    for (const auto& [kp, kc] : k_binom_terms(eps, 2 * i - (c1 + a2), i)) {
      accumulate(out, {eps, f, static_cast<int>(b1 + kp + b2), e}, sc * kc);
    }
  }
}

PBWElement operator*(const PBWElement& a, const PBWElement& b) {
  PBWElement::Map out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      if (ma.sector == mb.sector) multiply_monomials(ma, mb, ca * cb, out);
    }
  }
  return PBWElement(std::move(out));
}

// Morphisms

std::optional<Morphism> parse_morphism(std::string_view name) {
  if (name == "psi") return Morphism::psi;
  if (name == "omega") return Morphism::omega;
  if (name == "tau") return Morphism::tau;
  if (name == "rho") return Morphism::rho;
  return std::nullopt;
}

const char* morphism_name(Morphism m) {
  switch (m) {
    case Morphism::psi: return "psi";
    case Morphism::omega: return "omega";
    case Morphism::tau: return "tau";
    case Morphism::rho: return "rho";
  }
  return "?";
}

namespace {

PBWElement mono(int s, int f, int k, int e, const PiRational& c = PiRational(1)) {
  PBWElement x;
  x.add_term({s, f, k, e}, c);
  return x;
}

PBWElement morphism_on_monomial(Morphism mor, const PBWMonomial& m) {
  const int s = m.sector;
  switch (mor) {
    case Morphism::psi:
      return mono(s, m.f, -m.k, m.e, PiRational(pq(long(s) * m.k, 0)));
    case Morphism::omega:
      // omega(F^(a)) = pi^{a(1-e)} E^(a), omega(K) = K^-1, omega(E^(c)) = F^(c)
      return mono(s, 0, 0, m.f, PiRational(pq(long(m.f) * (1 - s), 0))) * mono(s, 0, -m.k, 0) *
             mono(s, m.e, 0, 0);
    case Morphism::tau:
      // anti: tau(E^(c)) tau(K^b) tau(F^(a))
      return mono(s, 0, 0, m.e, PiRational(pq(long(m.e) * (1 - s), 0))) * mono(s, 0, -m.k, 0) *
             mono(s, m.f, 0, 0);
    case Morphism::rho: {
      // anti: rho(E^(c)) = q^{c^2} K^c F^(c), rho(F^(a)) = q^{a^2} K^-a E^(a)
      PiRational c(pq(0, long(m.e) * m.e + long(m.f) * m.f));
      return mono(s, 0, m.e, 0, c) * mono(s, m.e, m.k - m.f, m.f);
    }
  }
  throw std::invalid_argument("unknown morphism");
}

}  // namespace

PBWElement apply_morphism(Morphism mor, const PBWElement& x) {
  PBWElement r;
  for (const auto& [m, c] : x.terms()) {
    PiRational coeff = (mor == Morphism::psi) ? bar(c) : c;
    r += morphism_on_monomial(mor, m).scaled(coeff);
  }
  return r;
}

PBWElement casimir(int sector) {
  const PiRational d2 = PiRational(qdelta() * qdelta()).inverse();
  PBWElement c = mono(sector, 1, 0, 0) * mono(sector, 0, 0, 1);
  c = c.scaled(PiRational(PiScalar::pi()));
  c.add_term({sector, 0, 1, 0}, PiRational(pq(1 - sector, 1)) * d2);
  c.add_term({sector, 0, -1, 0}, PiRational(pq(0, -1)) * d2);
  return c;
}

PBWElement casimir_ef_form(int sector) {
  const PiRational d2 = PiRational(qdelta() * qdelta()).inverse();
  PBWElement c = mono(sector, 0, 0, 1) * mono(sector, 1, 0, 0);
  c += mono(sector, 0, 1, 0, PiRational(pq(sector, -1)) * d2);
  c += mono(sector, 0, -1, 0, PiRational(pq(1, 1)) * d2);
  return c;
}

// Tensors

void TensorElement::add_term(const Key& k, const PiRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TensorElement TensorElement::pure(const std::vector<PBWElement>& factors) {
  TensorElement r;
  r.add_term({}, PiRational(1));
  for (const PBWElement& f : factors) {
    TensorElement next;
    for (const auto& [k, c] : r.terms_) {
      for (const auto& [m, x] : f.terms()) {
        Key key = k;
        key.push_back(m);
        next.add_term(key, c * x);
      }
    }
    r = std::move(next);
  }
  return r;
}

TensorElement& TensorElement::operator+=(const TensorElement& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

TensorElement TensorElement::scaled(const PiRational& c) const {
  TensorElement r;
  for (const auto& [k, x] : terms_) r.add_term(k, x * c);
  return r;
}

TensorElement operator*(const TensorElement& a, const TensorElement& b) {
  TensorElement r;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      if (ka.size() != kb.size()) throw std::invalid_argument("tensor rank mismatch");
      const std::size_t n = ka.size();
      bool zero = false;
      for (std::size_t i = 0; i < n && !zero; ++i) zero = ka[i].sector != kb[i].sector;
      if (zero) continue;
      // Moving b_i left past a_j (j > i) costs pi^{p(a_j) p(b_i)}.
      long sign = 0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) sign += ka[j].parity() * kb[i].parity();
      }
      std::vector<std::pair<TensorElement::Key, PiRational>> partial{{{}, (ca * cb).times_pi_power(sign)}};
      for (std::size_t i = 0; i < n && !partial.empty(); ++i) {
        PBWElement::Map prod;
        multiply_monomials(ka[i], kb[i], PiRational(1), prod);
        std::vector<std::pair<TensorElement::Key, PiRational>> next;
        for (const auto& [k, c] : partial) {
          for (const auto& [m, x] : prod) {
            TensorElement::Key key = k;
            key.push_back(m);
            next.emplace_back(std::move(key), c * x);
          }
        }
        partial = std::move(next);
      }
      for (const auto& [k, c] : partial) r.add_term(k, c);
    }
  }
  return r;
}

namespace {

// Delta_{e1,e2}(E^(p)) = sum_{a+b=p} pi^{e1 b} q^{ab} E^(a) K^b (x) E^(b)
TensorElement delta_e(int e1, int e2, int p) {
  // E^(a) K^b = q^{-2ab} K^b E^(a) in normal form.
  TensorElement r;
  for (int a = 0; a <= p; ++a) {
    const int b = p - a;
    r.add_term({{e1, 0, b, a}, {e2, 0, 0, b}}, PiRational(pq(long(e1) * b, -long(a) * b)));
  }
  return r;
}

// Delta_{e1,e2}(F^(p)) = sum_{a+b=p} (pi q)^{-ab} F^(a) (x) K^-a F^(b)
TensorElement delta_f(int e1, int e2, int p) {
  TensorElement r;
  for (int a = 0; a <= p; ++a) {
    const int b = p - a;
    // K^-a F^(b) = q^{2ab} F^(b) K^-a
    r.add_term({{e1, a, 0, 0}, {e2, b, -a, 0}}, PiRational(pq(long(a) * b, long(a) * b)));
  }
  return r;
}

TensorElement delta_k(int e1, int e2, int b) {
  TensorElement r;
  r.add_term({{e1, 0, b, 0}, {e2, 0, b, 0}}, PiRational(1));
  return r;
}

}  // namespace

TensorElement coproduct(const PBWElement& x) {
  TensorElement r;
  for (const auto& [m, c] : x.terms()) {
    for (int e1 = 0; e1 <= 1; ++e1) {
      const int e2 = (m.sector + e1) & 1;
      TensorElement t = delta_f(e1, e2, m.f) * delta_k(e1, e2, m.k) * delta_e(e1, e2, m.e);
      r += t.scaled(c);
    }
  }
  return r;
}

TensorElement coproduct_at(const TensorElement& x, std::size_t position) {
  TensorElement r;
  for (const auto& [k, c] : x.terms()) {
    if (position >= k.size()) throw std::invalid_argument("tensor position out of range");
    PBWElement single;
    single.add_term(k[position], PiRational(1));
    const TensorElement delta = coproduct(single);
    for (const auto& [pair, d] : delta.terms()) {
      TensorElement::Key key(k.begin(), k.begin() + static_cast<long>(position));
      key.push_back(pair[0]);
      key.push_back(pair[1]);
      key.insert(key.end(), k.begin() + static_cast<long>(position) + 1, k.end());
      r.add_term(key, c * d);
    }
  }
  return r;
}

TensorElement bar_tensor(const TensorElement& x) {
  TensorElement r;
  for (const auto& [k, c] : x.terms()) {
    TensorElement::Key key = k;
    long sign = 0;
    for (auto& m : key) {
      sign += long(m.sector) * m.k;
      m.k = -m.k;
    }
    r.add_term(key, bar(c).times_pi_power(sign));
  }
  return r;
}

PiRational counit(const PBWElement& x) {
  PiRational r;
  for (const auto& [m, c] : x.terms()) {
    if (m.sector == 0 && m.f == 0 && m.e == 0) r += c;
  }
  return r;
}

// S is a super anti-automorphism: S(xy) = pi^{p(x)p(y)} S(y) S(x).
PBWElement antipode(const PBWElement& x) {
  PBWElement r;
  for (const auto& [m, c] : x.terms()) {
    const long a = m.f, cc = m.e;
    const int s = m.sector;
    // S(E^(c)) = (-1)^c pi^{ec + C(c,2)} q^{c(c-1)} K^-c E^(c)
    PiScalar se = pq(long(s) * cc + binom2(cc), cc * (cc - 1));
    if (cc & 1) se = -se;
    // S(F^(a)) = (-1)^a pi^{C(a,2)} q^{-a(a-1)} F^(a) K^a
    PiScalar sf = pq(binom2(a), -a * (a - 1));
    if (a & 1) sf = -sf;
    // F^(a) K^a in normal form is already F K E order.
    PBWElement left = mono(s, 0, static_cast<int>(-cc - m.k), static_cast<int>(cc));
    // K^-c E^(c) K^-b = q^{2bc} K^{-c-b} E^(c)
    left = left.scaled(PiRational(pq(0, 2L * m.k * cc)));
    PBWElement right = mono(s, static_cast<int>(a), static_cast<int>(a), 0);
    PiRational coeff = c * PiRational(se * sf * pq(a * cc, 0));
    r += (left * right).scaled(coeff);
  }
  return r;
}

PBWElement antipode_contract(const TensorElement& x, bool left) {
  PBWElement r;
  for (const auto& [k, c] : x.terms()) {
    if (k.size() != 2) throw std::invalid_argument("antipode_contract needs two factors");
    PBWElement a, b;
    a.add_term(k[0], PiRational(1));
    b.add_term(k[1], PiRational(1));
    r += (left ? antipode(a) * b : a * antipode(b)).scaled(c);
  }
  return r;
}

// Text

std::string format_element(const PBWElement& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : x.terms()) {
    if (!out.empty()) out += " + ";
    out += detail::coefficient_prefix(c) + format_monomial(m);
  }
  return out;
}

std::string format_tensor(const TensorElement& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : x.terms()) {
    if (!out.empty()) out += " + ";
    out += detail::coefficient_prefix(c);
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (i) out += " (x) ";
      out += format_monomial(k[i]);
    }
  }
  return out;
}

namespace {

// One generator factor such as F0^(2), K1^-3, E0, e1.
std::optional<PBWElement> parse_factor(detail::Cursor& cur) {
  char g = cur.peek();
  if (g != 'E' && g != 'F' && g != 'K' && g != 'e') return std::nullopt;
  std::size_t at = cur.pos;
  ++cur.pos;
  char d = cur.peek_raw();
  if (d != '0' && d != '1') {
    cur.pos = at;
    cur.fail("expected sector digit 0 or 1 after generator");
  }
  ++cur.pos;
  const int s = d - '0';
  if (g == 'e') return PBWElement::idempotent(s);
  long power = 1;
  if (cur.peek_raw() == '^') {
    ++cur.pos;
    if (g == 'K') {
      if (cur.accept('(')) {
        power = cur.small_integer();
        cur.expect(')');
      } else {
        power = cur.small_integer();
      }
    } else {
      cur.expect('(');
      std::size_t p = cur.pos;
      power = cur.small_integer();
      if (power < 0) {
        cur.pos = p;
        cur.fail("divided power must be nonnegative");
      }
      cur.expect(')');
    }
  }
  const int pw = static_cast<int>(power);
  if (g == 'K') return PBWElement::K(s, pw);
  return g == 'E' ? PBWElement::E(s, pw) : PBWElement::F(s, pw);
}

PBWElement parse_term(detail::Cursor& cur) {
  PiRational coeff(1);
  if (auto c = detail::parse_coefficient(cur)) {
    coeff = *c;
  } else if (cur.at_integer()) {
    coeff = PiRational(PiScalar(Laurent(cur.integer())));
    if (!cur.accept('*')) return PBWElement::one().scaled(coeff);
  }
  std::optional<PBWElement> word;
  while (auto f = parse_factor(cur)) {
    word = word ? *word * *f : *f;
    cur.accept('*');
  }
  if (!word) cur.fail("expected generator");
  return word->scaled(coeff);
}

}  // namespace

PBWElement parse_element(std::string_view text) {
  detail::Cursor cur{text};
  if (cur.peek() == '0' && text.find_first_not_of(" \t0") == std::string_view::npos) {
    return {};
  }
  PBWElement r;
  bool negate = false;
  for (;;) {
    if (cur.peek() == '-' && !cur.at_integer()) {
      cur.accept('-');
      negate = !negate;
    }
    PBWElement t = parse_term(cur);
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
