#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles/naive_pbw.hpp"
#include "qcover/rep.hpp"
#include "qcover/triangular.hpp"

using namespace qcover;

namespace {

const PiRational P = PiRational(PiScalar::pi());
PiRational qp(int e) { return PiRational(PiScalar::q_power(e)); }
const PiRational Dinv = PiRational(qdelta()).inverse();

ModuleVector basis(std::size_t i) { return {{i, PiRational(1)}}; }

std::vector<WeightModule> sample_modules() {
  std::vector<WeightModule> ms;
  for (int n = 0; n <= 3; ++n) ms.push_back(simple_module(n, n == 2 ? -1 : 1));
  ms.push_back(omega_twist(simple_module(3, 1)));
  ms.push_back(tensor(simple_module(1, 1), simple_module(2, 1)));
  ms.push_back(tensor(simple_module(2, -1), simple_module(1, 1)));
  ms.push_back(tensor_lst(2, 2));
  return ms;
}

// Rank over Q(q), independent of the library's elimination.
int rank_q(std::vector<std::vector<RatFunc>> a) {
  int r = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == static_cast<std::size_t>(r) || a[i][c].is_zero()) continue;
      RatFunc f = a[i][c] / a[r][c];
      for (std::size_t k = 0; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    ++r;
  }
  return r;
}

// Multiplicity of L(n) = dim of the kernel of E on the weight-n space.
std::map<int, int> multiplicities_by_kernel(const WeightModule& m, int sign) {
  std::map<int, std::vector<std::size_t>> spaces;
  for (std::size_t i = 0; i < m.dim(); ++i) spaces[m.weight(i)].push_back(i);
  std::map<int, int> out;
  for (const auto& [w, idx] : spaces) {
    if (w < 0) continue;
    auto target = spaces.find(w + 2);
    if (target == spaces.end()) {
      out[w] = static_cast<int>(idx.size());
      continue;
    }
    std::vector<std::vector<RatFunc>> a(target->second.size(), std::vector<RatFunc>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) {
      ModuleVector img = act(m, PBWElement::E(0) + PBWElement::E(1), basis(idx[c]));
      for (std::size_t r = 0; r < target->second.size(); ++r) {
        auto it = img.find(target->second[r]);
        if (it != img.end()) a[r][c] = it->second.component(sign);
      }
    }
    int k = static_cast<int>(idx.size()) - rank_q(a);
    if (k > 0) out[w] = k;
  }
  return out;
}

}  // namespace

TEST_CASE("simple module: examples and E^(r) F^(s) against relation-only rewriting") {
  WeightModule l1 = simple_module(1, 1);
  CHECK(act(l1, PBWElement::E(1), basis(1)) == basis(0));
  CHECK_THROWS_AS(simple_module(-1, 1), std::invalid_argument);
  for (int n = 0; n <= 5; ++n)
    for (int sign : {1, -1}) {
      WeightModule m = simple_module(n, sign);
      CHECK(m.dim() == static_cast<std::size_t>(n + 1));
      CHECK(act(m, PBWElement::E(n & 1), basis(0)).empty());
      for (int r = 0; r <= n; ++r)
        for (int s = r; s <= n; ++s) {
          std::string w(r, 'E');
          w += std::string(s, 'F');
          PBWElement ef = oracle::to_divided(oracle::word(n & 1, w));
          PiRational expect;
          for (const auto& [mono, c] : ef.terms()) {
            if (mono.e != 0) continue;
            PiRational kv = qp(mono.k * n);
            if (sign < 0 && (mono.k & 1)) kv = -kv;
            expect += c * kv;
          }
          expect = expect / PiRational(qfact(r) * qfact(s));
          ModuleVector want;
          add_to(want, s - r, expect);
          CHECK(m.e_power(r, s) == want);
        }
    }
}

TEST_CASE("module axioms and the EF relation on every module kind") {
  for (const WeightModule& m : sample_modules()) {
    INFO(m.name());
    for (int s = 0; s < 2; ++s) {
      PBWElement rhs = (PBWElement::K(s).scaled(s ? P : PiRational(1)) - PBWElement::K(s, -1)).scaled(Dinv);
      for (std::size_t i = 0; i < m.dim(); ++i) {
        CHECK(act(m, PBWElement::E(s), act(m, PBWElement::F(s), basis(i))) -
                  scaled(act(m, PBWElement::F(s), act(m, PBWElement::E(s), basis(i))), P) ==
              act(m, rhs, basis(i)));
      }
    }
    const std::vector<PBWMonomial> monos = {{0, 1, 0, 1}, {1, 2, -1, 1}, {0, 0, 2, 2}, {1, 1, 1, 0},
                                            {0, 2, 0, 0}, {1, 0, 0, 3}, {0, 1, 1, 2}};
    for (const auto& x : monos)
      for (const auto& y : monos) {
        PBWElement px = PBWElement::monomial(x.sector, x.f, x.k, x.e);
        PBWElement py = PBWElement::monomial(y.sector, y.f, y.k, y.e);
        for (std::size_t i = 0; i < m.dim(); ++i) {
          ModuleVector lhs = act(m, px * py, basis(i));
          CHECK(lhs == act(m, px, act(m, py, basis(i))));
          for (const auto& [j, c] : lhs) {
            CHECK(m.weight(j) == m.weight(i) + x.weight() + y.weight());
            CHECK(m.parity(j) == ((m.parity(i) + x.parity() + y.parity()) & 1));
          }
        }
      }
  }
}

TEST_CASE("Verma singular vectors") {
  CHECK(verma_truncated(2, 1, 0, 5).e_power(1, 3).empty());
  CHECK(find_singular_vector(verma_truncated(2, 1, 0, 5)) == 3);
  CHECK(find_singular_vector(verma_truncated(1, 1, 1, 5)) == 2);
  CHECK(find_singular_vector(verma_truncated(2, -1, 0, 5)) == 3);
  for (int n = -3; n <= 8; ++n)
    for (int sign : {1, -1})
      for (int eps = 0; eps < 2; ++eps) {
        auto t = find_singular_vector(verma_truncated(n, sign, eps, 10));
        if (n >= 0 && (n & 1) == eps)
          CHECK(t == n + 1);
        else
          CHECK(!t.has_value());
      }
  // the quotient by the singular vector is the simple module
  for (int n = 0; n <= 5; ++n) {
    WeightModule v = verma_truncated(n, -1, n & 1, n + 3), l = simple_module(n, -1);
    for (int c = 0; c <= n; ++c)
      for (int j = 0; j <= n; ++j) CHECK(v.e_power(c, j) == l.e_power(c, j));
  }
}

TEST_CASE("omega twist") {
  for (int n = 0; n <= 4; ++n) {
    WeightModule w = omega_twist(simple_module(n, 1));
    CHECK(act(w, PBWElement::K(n & 1), basis(0)) == scaled(basis(0), qp(-n)));
    CHECK(act(w, PBWElement::F(n & 1), basis(0)).empty());
    WeightModule ww = omega_twist(w), l = simple_module(n, 1);
    for (std::size_t i = 0; i < l.dim(); ++i)
      CHECK(act(ww, PBWElement::K(n & 1), basis(i)) == act(l, PBWElement::K(n & 1), basis(i)));
  }
  CHECK(omega_twist(simple_module(2, 1)).label(1) == "E^(1)eta");
}

TEST_CASE("tensor products") {
  // L(1) (x) L(2) with v highest in L(1), w highest in L(2): F v (x) w - pi q^-1 [2]^-1 v (x) F w
  WeightModule m = tensor(simple_module(1, 1), simple_module(2, 1));
  CHECK(m.dim() == 6);
  ModuleVector sing;
  add_to(sing, 1 * 3 + 0, PiRational(1));
  add_to(sing, 0 * 3 + 1, -(P * qp(-1) / PiRational(qint(2))));
  CHECK(act(m, PBWElement::E(0) + PBWElement::E(1), sing).empty());
  CHECK(act(m, PBWElement::K(1), basis(0)) == scaled(basis(0), qp(3)));
  CHECK(tensor(simple_module(3, 1), simple_module(2, 1)).dim() == 12);
}

TEST_CASE("quasi-R-matrix") {
  CHECK(theta_product_coeff(0) == PiScalar(1));
  for (long n = 1; n <= 8; ++n) CHECK(theta_product_coeff(n).is_zero());
  WeightModule lt = tensor_lst(0, 0);
  CHECK(theta_apply(lt, basis(0)) == basis(0));
  for (int s = 0; s <= 3; ++s)
    for (int t = 0; t <= 3; ++t) {
      WeightModule m = tensor(simple_module(s, 1), simple_module(t, 1));
      for (std::size_t i = 0; i < m.dim(); ++i)
        CHECK(theta_apply(m, theta_apply(m, basis(i), true)) == basis(i));
    }
  WeightModule m = tensor(simple_module(2, 1), simple_module(2, 1));
  std::vector<PBWElement> us = {PBWElement::E(0) + PBWElement::E(1), PBWElement::F(0) + PBWElement::F(1),
                                PBWElement::K(0) + PBWElement::K(1), PBWElement::E(0, 2)};
  for (const auto& u : us) {
    TensorElement d = coproduct(u), db = bar_coproduct(u);
    for (std::size_t i = 0; i < m.dim(); ++i)
      CHECK(act_tensor(m, d, theta_apply(m, basis(i))) == theta_apply(m, act_tensor(m, db, basis(i))));
  }
  CHECK_THROWS_AS(theta_apply(simple_module(1, 1), basis(0)), std::invalid_argument);
}

TEST_CASE("Psi is an antilinear involution") {
  WeightModule m = tensor(simple_module(2, 1), simple_module(3, 1));
  for (std::size_t i = 0; i < m.dim(); ++i) CHECK(psi_apply(m, psi_apply(m, basis(i))) == basis(i));
  WeightModule lt = tensor_lst(2, 3);
  PiRational c = PiRational(PiScalar::monomial(2, 1, 3) + PiScalar(5));
  for (std::size_t i = 0; i < lt.dim(); ++i) {
    CHECK(psi_apply(lt, psi_apply(lt, basis(i))) == basis(i));
    CHECK(psi_apply(lt, scaled(basis(i), c)) == scaled(psi_apply(lt, basis(i)), bar(c)));
  }
  CHECK(psi_apply(lt, basis(0)) == basis(0));
}

TEST_CASE("tensor canonical basis") {
  TensorCB cb = tensor_cb(2, 1);
  std::map<std::pair<int, int>, PiScalar> want = {{{1, 1}, PiScalar(1)}, {{0, 0}, PiScalar::q_power(-2)}};
  CHECK(cb.elements.at({1, 1}) == want);
  CHECK(cb.closed_form.at({1, 1}));
  for (int s = 0; s <= 3; ++s)
    for (int t = 0; t <= 3; ++t) {
      TensorCB x = tensor_cb(s, t), y = tensor_cb_by_solver(s, t);
      CHECK(x.elements == y.elements);
      CHECK(x.elements.at({0, 0}).size() == 1);
      WeightModule lt = tensor_lst(s, t);
      for (const auto& [ab, coeffs] : x.elements) {
        ModuleVector v = cb_vector(x, ab.first, ab.second);
        CHECK(psi_apply(lt, v) == v);
        CHECK(coeffs.at(ab) == PiScalar(1));
        for (const auto& [mn, c] : coeffs) {
          if (mn == ab) continue;
          CHECK(mn.first - ab.first == mn.second - ab.second);
          CHECK(mn.first < ab.first);
          CHECK(cone_membership(c, Cone::q_minus_lattice));
          CHECK(cone_membership(c, Cone::positive));
        }
      }
    }
}

TEST_CASE("triangular solver on small systems") {
  TriangularSystem<PiScalar> diag;
  diag.size = 3;
  diag.height = {0, 1, 2};
  diag.below = {{}, {0}, {0, 1}};
  for (std::size_t i = 0; i < 3; ++i) diag.r[{i, i}] = PiScalar(1);
  auto p = triangular_bar_solve(diag, PiScalarBar{});
  for (std::size_t i = 0; i < 3; ++i) CHECK(p[i] == std::map<std::size_t, PiScalar>{{i, PiScalar(1)}});

  TriangularSystem<PiScalar> bad = diag;
  bad.r[{0, 1}] = PiScalar(1);
  CHECK_THROWS_AS(triangular_bar_solve(bad, PiScalarBar{}), std::invalid_argument);
}

TEST_CASE("Casimir") {
  for (int n = 0; n <= 8; ++n)
    for (int sign : {1, -1}) {
      WeightModule l = simple_module(n, sign);
      PBWElement c = casimir(0) + casimir(1);
      for (std::size_t i = 0; i < l.dim(); ++i)
        CHECK(act(l, c, act(l, c, basis(i))) == scaled(basis(i), casimir_square_scalar(n)));
      CHECK(casimir_decompose(l) == std::vector<std::pair<int, int>>{{n, 1}});
    }
  CHECK(casimir_decompose(tensor(simple_module(1, 1), simple_module(2, 1))) ==
        std::vector<std::pair<int, int>>{{3, 1}, {1, 1}});
  for (int s = 0; s <= 3; ++s)
    for (int t = 0; t <= 3; ++t) {
      WeightModule m = tensor(simple_module(s, 1), simple_module(t, 1));
      std::vector<std::pair<int, int>> expect;
      for (int i = 0; i <= std::min(s, t); ++i) expect.push_back({s + t - 2 * i, 1});
      auto got = casimir_decompose(m);
      CHECK(got == expect);
      for (int sign : {1, -1}) {
        std::map<int, int> k = multiplicities_by_kernel(m, sign);
        CHECK(std::vector<std::pair<int, int>>(k.rbegin(), k.rend()) == got);
      }
    }
}
