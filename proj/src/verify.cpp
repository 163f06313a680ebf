#include "qcover/verify.hpp"

#include <algorithm>
#include <atomic>
#include <memory>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <thread>

#include "qcover/cb_engine.hpp"
#include "qcover/rep.hpp"
#include "qcover/udot.hpp"

namespace qcover {

unsigned worker_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QCOVER_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(std::min(v, 256L));
  }
  return std::clamp(std::thread::hardware_concurrency(), 1u, 8u);
}

std::optional<std::string> run_cases(const std::vector<VerifyCase>& cases, unsigned threads) {
  std::vector<std::optional<std::string>> out(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      try {
        out[i] = cases[i].run();
      } catch (const std::exception& e) {
        out[i] = std::string("exception: ") + e.what();
      }
    }
  };
  const unsigned n = std::min<std::size_t>(worker_count(threads), std::max<std::size_t>(cases.size(), 1));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < cases.size(); ++i)
    if (out[i]) return cases[i].label + ": " + *out[i];
  return std::nullopt;
}

namespace {

using Fail = std::optional<std::string>;

int pick(int v, int dflt) { return v < 0 ? dflt : v; }

std::string clip(std::string s) {
  if (s.size() > 400) s = s.substr(0, 400) + " ...";
  return s;
}

std::string show(const PBWElement& x) { return clip(format_element(x)); }
std::string show(const TensorElement& x) { return clip(format_tensor(x)); }
std::string show(const UDotElement& x) { return clip(format_udot(x)); }
std::string show(const ModuleVector& v) {
  std::string s = "{";
  for (const auto& [i, c] : v) {
    if (s.size() > 1) s += ", ";
    s += std::to_string(i) + ": " + format_rational(c);
  }
  return clip(s + "}");
}

PiRational pip(long p) { return PiRational(1).times_pi_power(p); }
PiRational qp(int e) { return PiRational(PiScalar::q_power(e)); }

PBWElement E(int s, int p = 1) { return PBWElement::E(s, p); }
PBWElement F(int s, int p = 1) { return PBWElement::F(s, p); }
PBWElement K(int s, int p = 1) { return PBWElement::K(s, p); }

ModuleVector basis(std::size_t i) { return {{i, PiRational(1)}}; }

std::vector<PBWElement> generators(int s) { return {E(s), F(s), K(s), K(s, -1)}; }

PBWElement random_element(std::mt19937& rng, int sector, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg), kk(-2, 2), coeff(-3, 3), cnt(1, 3), par(0, 1);
  PBWElement x;
  const int n = cnt(rng);
  for (int i = 0; i < n; ++i) {
    const int a = deg(rng);
    const int c = std::uniform_int_distribution<int>(0, max_deg - a)(rng);
    int e = coeff(rng);
    if (e == 0) e = 1;
    const int k = kk(rng);
    x.add_term({sector, a, k, c}, PiRational(PiScalar::monomial(e, par(rng), kk(rng))));
  }
  return x;
}

std::string mismatch(const std::string& what, const std::string& lhs, const std::string& rhs) {
  return what + ": " + lhs + " != " + rhs;
}

// ---------------------------------------------------------------- relations

VerifyResult relations(const VerifyOptions& o) {
  const int N = pick(o.max_n, 6);
  const PiRational P = PiRational(PiScalar::pi());
  const PiRational dinv = PiRational(qdelta()).inverse();
  std::vector<VerifyCase> cases;
  for (int s = 0; s <= 1; ++s) {
    cases.push_back({"defining relations, sector " + std::to_string(s), [=]() -> Fail {
      const PBWElement lhs = E(s) * F(s);
      const PBWElement rhs = (F(s) * E(s)).scaled(P) + (K(s).scaled(pip(s)) - K(s, -1)).scaled(dinv);
      if (lhs != rhs) return mismatch("E F", show(lhs), show(rhs));
      if (K(s) * E(s) * K(s, -1) != E(s).scaled(qp(2))) return std::string("K E K^-1 != q^2 E");
      if (K(s) * F(s) * K(s, -1) != F(s).scaled(qp(-2))) return std::string("K F K^-1 != q^-2 F");
      if (K(s) * K(s, -1) != PBWElement::idempotent(s)) return std::string("K K^-1 != e");
      if (!(E(s) * F(1 - s)).is_zero()) return std::string("cross-sector product is nonzero");
      return std::nullopt;
    }});
    for (int r = 1; r <= N; ++r)
      for (int t = 1; t <= N; ++t)
        cases.push_back({"sector " + std::to_string(s) + ", r=" + std::to_string(r) + ", s=" + std::to_string(t),
                         [=]() -> Fail {
                           PBWElement l1 = (E(s) * F(s, t)).scaled(pip(t));
                           PBWElement r1 = F(s, t) * E(s) + (F(s, t - 1) * k_bracket(s, 1 - t)).scaled(P);
                           if (l1 != r1) return mismatch("identity (1)", show(l1), show(r1));
                           PBWElement l2 = (E(s, r) * F(s, t)).scaled(pip(r * t)), r2;
                           for (int i = 0; i <= std::min(r, t); ++i)
                             r2 += (F(s, t - i) * k_binom(s, 2 * i - (r + t), i) * E(s, r - i))
                                       .scaled(pip(i * (i + 1) / 2));
                           if (l2 != r2) return mismatch("identity (2)", show(l2), show(r2));
                           PBWElement l3 = (F(s) * E(s, t)).scaled(pip(t));
                           PBWElement r3 = E(s, t) * F(s) - (E(s, t - 1) * k_bracket(s, t - 1)).scaled(pip(1 - t));
                           if (l3 != r3) return mismatch("identity (3)", show(l3), show(r3));
                           PBWElement l4 = (F(s, t) * E(s, r)).scaled(pip(r * t)), r4;
                           for (int i = 0; i <= std::min(r, t); ++i) {
                             PiRational c = pip(i * (r + t));
                             if (i & 1) c = -c;
                             r4 += (E(s, r - i) * k_binom(s, r + t - (i + 1), i) * F(s, t - i)).scaled(c);
                           }
                           if (l4 != r4) return mismatch("identity (4)", show(l4), show(r4));
                           return std::nullopt;
                         }});
  }
  VerifyResult res{"relations", true, cases.size(), ""};
  if (auto f = run_cases(cases, o.threads)) {
    res.ok = false;
    res.message = "FAIL: " + *f;
  } else {
    res.message = "OK: commutation identities (1)-(4) hold for 1 ≤ r,s ≤ " + std::to_string(N) +
                  ", both sectors; defining relations hold";
  }
  return res;
}

// ------------------------------------------------------------ automorphisms

PBWElement apply_n(Morphism m, int times, PBWElement x) {
  for (int i = 0; i < times; ++i) x = apply_morphism(m, x);
  return x;
}

Fail group_relations(int s, const PBWElement& x) {
  using M = Morphism;
  auto eq = [&](const char* what, const PBWElement& a, const PBWElement& b) -> Fail {
    if (a == b) return std::nullopt;
    return mismatch(std::string(what) + " on " + show(x), show(a), show(b));
  };
  if (s == 0) {
    if (auto f = eq("omega^4 = id", apply_n(M::omega, 4, x), x)) return f;
    if (auto f = eq("tau omega = omega^3 tau", apply_morphism(M::tau, apply_morphism(M::omega, x)),
                    apply_n(M::omega, 3, apply_morphism(M::tau, x))))
      return f;
  } else {
    if (auto f = eq("omega^2 = id", apply_n(M::omega, 2, x), x)) return f;
    if (auto f = eq("tau omega = omega tau", apply_morphism(M::tau, apply_morphism(M::omega, x)),
                    apply_morphism(M::omega, apply_morphism(M::tau, x))))
      return f;
  }
  if (auto f = eq("tau^2 = id", apply_n(M::tau, 2, x), x)) return f;
  if (auto f = eq("psi^2 = id", apply_n(M::psi, 2, x), x)) return f;
  if (auto f = eq("psi tau = tau psi", apply_morphism(M::psi, apply_morphism(M::tau, x)),
                  apply_morphism(M::tau, apply_morphism(M::psi, x))))
    return f;
  if (auto f = eq("psi omega = omega psi", apply_morphism(M::psi, apply_morphism(M::omega, x)),
                  apply_morphism(M::omega, apply_morphism(M::psi, x))))
    return f;
  return std::nullopt;
}

VerifyResult automorphisms(const VerifyOptions& o) {
  const int S = pick(o.samples, 100), D = pick(o.max_n, 4);
  std::vector<VerifyCase> cases;
  for (int s = 0; s <= 1; ++s) {
    std::vector<PBWElement> xs = generators(s);
    std::mt19937 rng(o.seed * 2 + static_cast<unsigned>(s));
    for (int i = 0; i < S; ++i) xs.push_back(random_element(rng, s, D));
    for (std::size_t i = 0; i < xs.size(); ++i)
      cases.push_back({"sector " + std::to_string(s) + ", element " + std::to_string(i),
                       [s, x = xs[i]] { return group_relations(s, x); }});
  }
  VerifyResult res{"automorphisms", true, cases.size(), ""};
  if (auto f = run_cases(cases, o.threads)) {
    res.ok = false;
    res.message = "FAIL: " + *f;
  } else {
    res.message = "OK: D4 x Z2 relations hold on generators and " + std::to_string(S) +
                  " random degree-≤" + std::to_string(D) + " elements per sector";
  }
  return res;
}

// --------------------------------------------------------------------- hopf

PBWElement counit_left(const TensorElement& x) {
  PBWElement r;
  for (const auto& [key, c] : x.terms()) {
    PBWElement a, b;
    a.add_term(key[0], PiRational(1));
    b.add_term(key[1], c);
    r += b.scaled(counit(a));
  }
  return r;
}

PBWElement counit_right(const TensorElement& x) {
  PBWElement r;
  for (const auto& [key, c] : x.terms()) {
    PBWElement a, b;
    a.add_term(key[0], c);
    b.add_term(key[1], PiRational(1));
    r += a.scaled(counit(b));
  }
  return r;
}

// closed divided-power coproduct formulas, built from products in each factor
TensorElement divided_e_formula(int eps, int p) {
  TensorElement r;
  for (int a = 0; a <= p; ++a) {
    const int b = p - a;
    r += TensorElement::pure({E(0, a) * K(0, b), E(eps, b)}).scaled(qp(a * b));
    r += TensorElement::pure({E(1, a) * K(1, b), E(1 - eps, b)}).scaled(pip(b) * qp(a * b));
  }
  return r;
}

TensorElement divided_f_formula(int eps, int p) {
  TensorElement r;
  for (int a = 0; a <= p; ++a) {
    const int b = p - a;
    const PiRational c = pip(a * b) * qp(-a * b);
    r += TensorElement::pure({F(0, a), K(eps, -a) * F(eps, b)}).scaled(c);
    r += TensorElement::pure({F(1, a), K(1 - eps, -a) * F(1 - eps, b)}).scaled(c);
  }
  return r;
}

VerifyResult hopf(const VerifyOptions& o) {
  const int N = pick(o.max_n, 4);
  std::vector<VerifyCase> cases;
  for (int s = 0; s <= 1; ++s) {
    const std::string tag = "sector " + std::to_string(s);
    for (int p = 1; p <= N; ++p)
      cases.push_back({tag + ", power " + std::to_string(p), [=]() -> Fail {
                         if (coproduct(E(s, p)) != divided_e_formula(s, p))
                           return mismatch("Delta(E^(p))", show(coproduct(E(s, p))), show(divided_e_formula(s, p)));
                         if (coproduct(F(s, p)) != divided_f_formula(s, p))
                           return mismatch("Delta(F^(p))", show(coproduct(F(s, p))), show(divided_f_formula(s, p)));
                         TensorElement pe = coproduct(E(s)), pf = coproduct(F(s));
                         for (int i = 1; i < p; ++i) {
                           pe = pe * coproduct(E(s));
                           pf = pf * coproduct(F(s));
                         }
                         const PiRational inv = PiRational(qfact(p)).inverse();
                         if (coproduct(E(s, p)) != pe.scaled(inv)) return std::string("Delta(E^(p)) != Delta(E)^p/[p]!");
                         if (coproduct(F(s, p)) != pf.scaled(inv)) return std::string("Delta(F^(p)) != Delta(F)^p/[p]!");
                         for (const PBWElement& x : {E(s, p), F(s, p), E(s, p) * F(s) * K(s)}) {
                           const TensorElement d = coproduct(x);
                           if (coproduct_at(d, 0) != coproduct_at(d, 1))
                             return "coassociativity fails on " + show(x);
                         }
                         return std::nullopt;
                       }});
    cases.push_back({tag + ", algebra map", [=]() -> Fail {
                       std::vector<PBWElement> xs = generators(s);
                       xs.push_back(E(s, 2));
                       xs.push_back(F(s, 2));
                       for (const auto& x : xs)
                         for (const auto& y : xs)
                           if (coproduct(x * y) != coproduct(x) * coproduct(y))
                             return "Delta(xy) != Delta(x) Delta(y) for x = " + show(x) + ", y = " + show(y);
                       std::mt19937 rng(o.seed * 7 + static_cast<unsigned>(s));
                       for (int i = 0; i < 10; ++i) {
                         const PBWElement x = random_element(rng, s, 2), y = random_element(rng, s, 2);
                         if (coproduct(x * y) != coproduct(x) * coproduct(y))
                           return "Delta(xy) != Delta(x) Delta(y) for x = " + show(x) + ", y = " + show(y);
                       }
                       return std::nullopt;
                     }});
    cases.push_back({tag + ", counit and antipode", [=]() -> Fail {
                       for (const PBWElement& g : generators(s)) {
                         const TensorElement d = coproduct(g);
                         // the unit of U is e_0 + e_1, so g = g (e_0 + e_1) on both sides
                         if (counit_left(d) != g) return "(counit x id) Delta != id on " + show(g);
                         if (counit_right(d) != g) return "(id x counit) Delta != id on " + show(g);
                         const PBWElement unit = PBWElement::one().scaled(counit(g));
                         if (antipode_contract(d, true) != unit) return "m(S x id) Delta != counit on " + show(g);
                         if (antipode_contract(d, false) != unit) return "m(id x S) Delta != counit on " + show(g);
                       }
                       if (s == 1 && antipode(F(1)) != -(F(1) * K(1)))
                         return mismatch("S(F_1)", show(antipode(F(1))), "-F_1 K_1");
                       return std::nullopt;
                     }});
  }
  VerifyResult res{"hopf", true, cases.size(), ""};
  if (auto f = run_cases(cases, o.threads)) {
    res.ok = false;
    res.message = "FAIL: " + *f;
  } else {
    res.message = "OK: coassociativity, algebra map, divided-power coproducts for powers ≤ " +
                  std::to_string(N) + ", counit and antipode axioms on generators";
  }
  return res;
}

// -------------------------------------------------------------------- theta

VerifyResult theta(const VerifyOptions& o) {
  const int N = pick(o.max_n, 10), M = pick(o.modules, 4);
  std::vector<VerifyCase> cases;
  cases.push_back({"b_n", [=]() -> Fail {
                     if (!(theta_product_coeff(0) == PiScalar(1))) return std::string("b_0 != 1");
                     for (long n = 1; n <= N; ++n)
                       if (!theta_product_coeff(n).is_zero())
                         return "b_" + std::to_string(n) + " = " + format_scalar(theta_product_coeff(n));
                     return std::nullopt;
                   }});
  for (int s = 0; s <= M; ++s)
    for (int t = 0; t <= M; ++t)
      cases.push_back({"L(" + std::to_string(s) + ")⊗L(" + std::to_string(t) + ")", [=]() -> Fail {
                         const WeightModule m = tensor(simple_module(s, 1), simple_module(t, 1));
                         std::vector<PBWElement> us;
                         for (int e = 0; e <= 1; ++e)
                           for (const auto& g : generators(e)) us.push_back(g);
                         for (std::size_t i = 0; i < m.dim(); ++i) {
                           const ModuleVector th = theta_apply(m, basis(i));
                           if (theta_apply(m, th, true) != basis(i))
                             return "Theta-bar Theta != 1 on basis vector " + m.label(i);
                           for (const auto& u : us) {
                             const ModuleVector lhs = act_tensor(m, coproduct(u), th);
                             const ModuleVector rhs = theta_apply(m, act_tensor(m, bar_coproduct(u), basis(i)));
                             if (lhs != rhs)
                               return "Delta(u) Theta != Theta Delta-bar(u) for u = " + show(u) + " on " +
                                      m.label(i) + ": " + show(lhs) + " != " + show(rhs);
                           }
                         }
                         return std::nullopt;
                       }});
  VerifyResult res{"theta", true, cases.size(), ""};
  if (auto f = run_cases(cases, o.threads)) {
    res.ok = false;
    res.message = "FAIL: " + *f;
  } else {
    res.message = "OK: b_n = 0 for 1 ≤ n ≤ " + std::to_string(N) +
                  "; intertwining verified on L(s)⊗L(t), s,t ≤ " + std::to_string(M);
  }
  return res;
}

// ------------------------------------------------------------------ casimir

VerifyResult casimir_suite(const VerifyOptions& o) {
  const int N = pick(o.max_n, 8), M = pick(o.modules, 4);
  std::vector<VerifyCase> cases;
  for (int n = 0; n <= N; ++n)
    for (int sign : {1, -1})
      cases.push_back({"L(" + std::to_string(n) + (sign > 0 ? ",+)" : ",-)"), [=]() -> Fail {
                         const WeightModule l = simple_module(n, sign);
                         const PBWElement c = casimir(0) + casimir(1);
                         const PiRational want = casimir_square_scalar(n);
                         for (std::size_t i = 0; i < l.dim(); ++i) {
                           const ModuleVector got = act(l, c, act(l, c, basis(i)));
                           if (got != scaled(basis(i), want))
                             return "C^2 on " + l.label(i) + " = " + show(got) + ", expected " + format_rational(want);
                         }
                         if (casimir_decompose(l) != std::vector<std::pair<int, int>>{{n, 1}})
                           return std::string("decomposition of a simple module is not itself");
                         return std::nullopt;
                       }});
  for (int s = 0; s <= M; ++s)
    for (int t = 0; t <= M; ++t)
      cases.push_back({"L(" + std::to_string(s) + ")⊗L(" + std::to_string(t) + ")", [=]() -> Fail {
                         std::vector<std::pair<int, int>> want;
                         for (int i = 0; i <= std::min(s, t); ++i) want.push_back({s + t - 2 * i, 1});
                         const auto got = casimir_decompose(tensor(simple_module(s, 1), simple_module(t, 1)));
                         if (got == want) return std::nullopt;
                         std::string g;
                         for (const auto& [n, k] : got) g += " L(" + std::to_string(n) + ")^" + std::to_string(k);
                         return "decomposition is" + g;
                       }});
  VerifyResult res{"casimir", true, cases.size(), ""};
  if (auto f = run_cases(cases, o.threads)) {
    res.ok = false;
    res.message = "FAIL: " + *f;
  } else {
    res.message = "OK: C^2 acts on L(n,±) as ((πq)^{n+1} + q^{-n-1})^2/(πq - q^{-1})^4 for n ≤ " +
                  std::to_string(N) + "; L(s)⊗L(t) = ⊕ L(s+t-2i) for s,t ≤ " + std::to_string(M);
  }
  return res;
}

// ---------------------------------------------------------------- cb-tensor

Fail check_tensor_cb(int s, int t) {
  const TensorCB cb = tensor_cb(s, t), solved = tensor_cb_by_solver(s, t);
  const WeightModule lt = tensor_lst(s, t);
  for (const auto& [ab, coeffs] : cb.elements) {
    const auto [a, b] = ab;
    const std::string at = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    if (coeffs != solved.elements.at(ab)) return "closed form and solver differ at " + at;
    if (cb.closed_form.at(ab) != (s - a >= t - b)) return "region flag wrong at " + at;
    const ModuleVector v = cb_vector(cb, a, b);
    if (psi_apply(lt, v) != v) return "not Psi-invariant at " + at;
    auto it = coeffs.find(ab);
    if (it == coeffs.end() || !it->second.is_one()) return "leading coefficient is not 1 at " + at;
    for (const auto& [mn, c] : coeffs) {
      if (mn == ab) continue;
      if (mn.first - a != mn.second - b || mn.first >= a) return "term outside the lower cone at " + at;
      if (!cone_membership(c, Cone::q_minus_lattice) || !cone_membership(c, Cone::positive))
        return "coefficient " + format_scalar(c) + " not in q^-1 N[q^-1, pi] at " + at;
      if (s - a >= t - b && !(c == tensor_cb_coefficient(s, t, a, b, a - mn.first)))
        return "closed coefficient differs at " + at;
    }
  }
  return std::nullopt;
}

VerifyResult cb_tensor(const VerifyOptions& o) {
  const int M = pick(o.modules, 4);
  std::vector<VerifyCase> cases;
  for (int s = 0; s <= M; ++s)
    for (int t = 0; t <= M; ++t)
      cases.push_back({"L(" + std::to_string(s) + "," + std::to_string(t) + ")", [=] { return check_tensor_cb(s, t); }});
  VerifyResult res{"cb-tensor", true, cases.size(), ""};
  if (auto f = run_cases(cases, o.threads)) {
    res.ok = false;
    res.message = "FAIL: " + *f;
  } else {
    res.message = "OK: canonical basis of L(s,t) is Psi-invariant, unitriangular, lower coefficients in "
                  "q^-1 N[q^-1, pi]; closed form = solver; s,t ≤ " + std::to_string(M);
  }
  return res;
}

// ------------------------------------------------------------------ cb-udot

VerifyResult cb_udot(const VerifyOptions& o) {
  const int B = pick(o.box, 4), Kb = pick(o.weights, 12), M = pick(o.modules, 4);
  std::vector<VerifyCase> cases;
  for (int k = -Kb; k <= Kb; ++k)
    cases.push_back({"k=" + std::to_string(k), [=]() -> Fail {
                       for (int a = 0; a <= B; ++a)
                         for (int b = 0; b <= B; ++b) {
                           const CBIndex i{a, b, k};
                           const UDotElement x = cb_element(i);
                           if (cb_expand(x) != std::map<CBIndex, PiRational>{{i, PiRational(1)}})
                             return "cb_expand(cb_element) is not the identity at " + format_cb_index(i);
                           if (bar(x) != x) return format_cb_index(i) + " is not bar-invariant: " + show(x);
                           if (!x.is_integral()) return format_cb_index(i) + " is not integral";
                           const UDotElement m = UDotElement::ef(a, k - 2 * b, b);
                           UDotElement back;
                           for (const auto& [j, c] : cb_expand(m)) back += cb_element(j).scaled(c);
                           if (back != m) return "expansion of " + show(m) + " does not recombine";
                         }
                       return std::nullopt;
                     }});
  for (int s = 0; s <= M; ++s)
    for (int t = 0; t <= M; ++t)
      cases.push_back({"L(" + std::to_string(s) + "," + std::to_string(t) + ")", [=]() -> Fail {
                         const TensorCB tcb = tensor_cb(s, t);
                         for (int a = 0; a <= s; ++a)
                           for (int b = 0; b <= t; ++b) {
                             const CBIndex i{a, b, t - s};
                             const ModuleVector got = act_on_tensor(cb_element(i), s, t), want = cb_vector(tcb, a, b);
                             if (got != want)
                               return format_cb_index(i) + " acting on eta⊗nu gives " + show(got) + ", expected " + show(want);
                           }
                         return std::nullopt;
                       }});
  VerifyResult res{"cb-udot", true, cases.size(), ""};
  if (auto f = run_cases(cases, o.threads)) {
    res.ok = false;
    res.message = "FAIL: " + *f;
  } else {
    res.message = "OK: round trip and bar-invariance for a,b ≤ " + std::to_string(B) + ", |k| ≤ " +
                  std::to_string(Kb) + "; action on L(s,t) = tensor canonical basis for s,t ≤ " + std::to_string(M);
  }
  return res;
}

// --------------------------------------------------------------- positivity

VerifyResult positivity(const VerifyOptions& o) {
  const int B = pick(o.box, 3), Kb = pick(o.weights, 8);
  std::vector<VerifyCase> cases;
  auto products = std::make_shared<std::atomic<long>>(0);
  for (int k1 = -Kb; k1 <= Kb; ++k1)
    for (int a1 = 0; a1 <= B; ++a1)
      for (int b1 = 0; b1 <= B; ++b1)
        cases.push_back({format_cb_index({a1, b1, k1}), [=]() -> Fail {
                           for (int a2 = 0; a2 <= B; ++a2)
                             for (int b2 = 0; b2 <= B; ++b2) {
                               const int k2 = k1 - 2 * a2 + 2 * b2;
                               if (std::abs(k2) > Kb) continue;
                               const CBIndex j{a2, b2, k2};
                               for (const auto& [i, c] : structure_constants({a1, b1, k1}, j)) {
                                 ++*products;
                                 if (!cone_membership(c, Cone::positive))
                                   return "coefficient of " + format_cb_index(i) + " in " + format_cb_index({a1, b1, k1}) +
                                          " * " + format_cb_index(j) + " is " + format_scalar(c);
                               }
                             }
                           return std::nullopt;
                         }});
  VerifyResult res{"positivity", true, cases.size(), ""};
  if (auto f = run_cases(cases, o.threads)) {
    res.ok = false;
    res.message = "FAIL: " + *f;
  } else {
    res.message = "OK: " + std::to_string(products->load()) + " structure constants in N[q, q^-1, pi] for a,b ≤ " +
                  std::to_string(B) + ", |k| ≤ " + std::to_string(Kb);
  }
  return res;
}

// --------------------------------------------------------------------- form

PiRational pure_f_value(int a) {
  // pi^a q^{C(a+1,2)} (pi q - q^-1)^{-a} / [a]!
  const PiScalar num = PiScalar::monomial(1, a, a * (a + 1) / 2);
  return PiRational::fraction(num, qdelta().pow(static_cast<unsigned>(a)) * qfact(a));
}

VerifyResult form(const VerifyOptions& o) {
  const int B = pick(o.box, 3), Kb = pick(o.weights, 6), N = pick(o.max_n, 5);
  std::vector<UDotElement> box;
  for (int k = -Kb; k <= Kb; ++k)
    for (int a = 0; a <= B; ++a)
      for (int b = 0; b <= B; ++b) box.push_back(UDotElement::ef(a, k - 2 * b, b));
  std::vector<VerifyCase> cases;
  cases.push_back({"pure F", [=]() -> Fail {
                     for (int a = 0; a <= N; ++a)
                       for (int k = -2; k <= 2; ++k) {
                         const UDotElement x = UDotElement::ef(0, k - 2 * a, a);
                         const PiRational v = bilinear_form(x, x), want = pure_f_value(a);
                         if (v != want) return mismatch("(F^(a) 1_k, F^(a) 1_k) at a=" + std::to_string(a),
                                                        format_rational(v), format_rational(want));
                       }
                     return std::nullopt;
                   }});
  for (std::size_t i = 0; i < box.size(); ++i)
    cases.push_back({show(box[i]), [=, &box]() -> Fail {
                       const UDotElement& x = box[i];
                       const UDotMonomial mx = x.terms().begin()->first;
                       const int s = mx.sector();
                       const UDotElement fx = bimodule_act(F(s), x, PBWElement::one());
                       for (const auto& y : box) {
                         const UDotMonomial my = y.terms().begin()->first;
                         const PiRational v = bilinear_form(x, y);
                         if (mx.left_weight() != my.left_weight() || mx.right_weight() != my.right_weight()) {
                           if (!v.is_zero()) return "distinct blocks pair nontrivially with " + show(y);
                           continue;
                         }
                         if (v != bilinear_form(y, x)) return "not symmetric with " + show(y);
                         if (v != bilinear_form(x, y, FormStrategy::strip_f_first))
                           return "strip orders disagree with " + show(y);
                         const UDotElement ry = bimodule_act(apply_morphism(Morphism::rho, F(s)), y, PBWElement::one());
                         if (bilinear_form(fx, y) != bilinear_form(x, ry)) return "(F x, y) != (x, rho(F) y) for y = " + show(y);
                       }
                       return std::nullopt;
                     }});
  VerifyResult res{"form", true, cases.size(), ""};
  if (auto f = run_cases(cases, o.threads)) {
    res.ok = false;
    res.message = "FAIL: " + *f;
  } else {
    res.message = "OK: block-orthogonal, symmetric, strip-order independent and contravariant on a,b ≤ " +
                  std::to_string(B) + ", |k| ≤ " + std::to_string(Kb) + "; pure-F values for a ≤ " + std::to_string(N);
  }
  return res;
}

// --------------------------------------------------------------- specialize

VerifyResult specialize_suite(const VerifyOptions& o) {
  const int B = pick(o.box, 4), Kb = pick(o.weights, 12);
  std::vector<VerifyCase> cases;
  for (int sign : {1, -1})
    for (int k = -Kb; k <= Kb; ++k)
      cases.push_back({std::string(sign > 0 ? "pi=+1" : "pi=-1") + ", k=" + std::to_string(k), [=]() -> Fail {
                         for (const auto& [i, native] : sl2_cb_oracle_at(B, k, sign)) {
                           const SpecializedUDot got = specialize_udot(cb_element(i), sign);
                           if (got != native)
                             return format_cb_index(i) + " specializes to " + clip(format_specialized(got)) +
                                    ", native " + clip(format_specialized(native));
                         }
                         return std::nullopt;
                       }});
  VerifyResult res{"specialize", true, cases.size(), ""};
  if (auto f = run_cases(cases, o.threads)) {
    res.ok = false;
    res.message = "FAIL: " + *f;
  } else {
    res.message = "OK: canonical basis at pi = +1 and pi = -1 equals the natively computed one for a,b ≤ " +
                  std::to_string(B) + ", |k| ≤ " + std::to_string(Kb);
  }
  return res;
}

// ----------------------------------------------------------- classification

VerifyResult classification(const VerifyOptions& o) {
  const int N = pick(o.max_n, 8), cutoff = std::max(1, pick(o.cutoff, 10));
  std::vector<VerifyCase> cases;
  for (int n = -4; n <= N; ++n)
    for (int sign : {1, -1})
      for (int eps = 0; eps <= 1; ++eps)
        cases.push_back({"weight " + std::string(sign > 0 ? "+" : "-") + "q^" + std::to_string(n) + ", sector " +
                             std::to_string(eps),
                         [=]() -> Fail {
                           const auto t = find_singular_vector(verma_truncated(n, sign, eps, cutoff));
                           const bool classified = n >= 0 && (n & 1) == eps;
                           if (classified && t != n + 1)
                             return (t ? "singular vector at t = " + std::to_string(*t)
                                       : "no singular vector up to the cutoff") +
                                    ", expected t = " + std::to_string(n + 1);
                           if (!classified && t) return "unexpected singular vector at t = " + std::to_string(*t);
                           return std::nullopt;
                         }});
  VerifyResult res{"classification", true, cases.size(), ""};
  if (auto f = run_cases(cases, o.threads)) {
    res.ok = false;
    res.message = "FAIL: " + *f;
  } else {
    res.message = "OK: singular vector exactly at t = n+1 for ±q^n, 0 ≤ n ≤ " + std::to_string(N) +
                  ", n ≡ ε; none for the other weights with -4 ≤ n ≤ " + std::to_string(N) + " (cutoff " + std::to_string(cutoff) + ")";
  }
  return res;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"relations",  "automorphisms", "hopf",      "theta",
                                                 "casimir",    "cb-tensor",     "cb-udot",   "positivity",
                                                 "form",       "specialize",    "classification"};
  return names;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

VerifyResult run_suite(const std::string& name, const VerifyOptions& opt) {
  if (name == "relations") return relations(opt);
  if (name == "automorphisms") return automorphisms(opt);
  if (name == "hopf") return hopf(opt);
  if (name == "theta") return theta(opt);
  if (name == "casimir") return casimir_suite(opt);
  if (name == "cb-tensor") return cb_tensor(opt);
  if (name == "cb-udot") return cb_udot(opt);
  if (name == "positivity") return positivity(opt);
  if (name == "form") return form(opt);
  if (name == "specialize") return specialize_suite(opt);
  if (name == "classification") return classification(opt);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace qcover
