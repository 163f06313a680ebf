#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcover/pi_ring.hpp"

namespace qcover {

/// Bar data for PiScalar: q -> pi q^-1.
struct PiScalarBar {
  PiScalar bar(const PiScalar& x) const { return qcover::bar(x); }
  PiScalar negative_part(const PiScalar& x) const {
    return {x.even_part().negative_part(), x.odd_part().negative_part()};
  }
  PiScalar positive_part(const PiScalar& x) const {
    return {x.even_part().positive_part(), x.odd_part().positive_part()};
  }
  bool constant_term_zero(const PiScalar& x) const {
    return x.even_part().coeff(0) == 0 && x.odd_part().coeff(0) == 0;
  }
};

/// Bar data in the specialized ring Z[q, q^-1] with pi fixed to +-1.
struct SignedBar {
  int pi = 1;
  Laurent bar(const Laurent& x) const { return x.substitute_inverse(pi); }
  Laurent negative_part(const Laurent& x) const { return x.negative_part(); }
  Laurent positive_part(const Laurent& x) const { return x.positive_part(); }
  bool constant_term_zero(const Laurent& x) const { return x.coeff(0) == 0; }
};

/// Standard basis 0..size-1 with a partial order and the bar map in that basis:
/// bar(b_{h'}) = sum_{h <= h'} r(h, h') b_h.
template <class S>
struct TriangularSystem {
  std::size_t size = 0;
  std::vector<std::string> labels;
  /// h < h' implies height[h] < height[h'].
  std::vector<int> height;
  /// below[h'] = {h : h < h'} (strict).
  std::vector<std::vector<std::size_t>> below;
  /// Entries r(h, h'); absent means zero.
  std::map<std::pair<std::size_t, std::size_t>, S> r;

  S entry(std::size_t h, std::size_t hp) const {
    auto it = r.find({h, hp});
    return it == r.end() ? S{} : it->second;
  }
};

/// Canonical basis element of each h' as {h -> p(h, h')}: p(h', h') = 1,
/// p(h, h') in q^-1 Z[q^-1] (with pi) for h < h', and bar-invariant. Throws
/// std::invalid_argument on malformed input.
template <class S, class Bar>
std::vector<std::map<std::size_t, S>> triangular_bar_solve(const TriangularSystem<S>& sys,
                                                          const Bar& b) {
  const std::size_t n = sys.size;
  if (sys.height.size() != n || sys.below.size() != n)
    throw std::invalid_argument("malformed triangular system: size mismatch");
  std::set<std::pair<std::size_t, std::size_t>> lt;
  for (std::size_t hp = 0; hp < n; ++hp)
    for (std::size_t h : sys.below[hp]) {
      if (h >= n || sys.height[h] >= sys.height[hp])
        throw std::invalid_argument("malformed triangular system: order not graded by height");
      lt.insert({h, hp});
    }
  auto le = [&](std::size_t h, std::size_t hp) { return h == hp || lt.count({h, hp}) > 0; };
  for (const auto& [key, v] : sys.r)
    if (!v.is_zero() && !le(key.first, key.second))
      throw std::invalid_argument("malformed triangular system: bar is not triangular");

  auto interval = [&](std::size_t h, std::size_t hp) {
    std::vector<std::size_t> out;
    for (std::size_t m : sys.below[hp])
      if (le(h, m)) out.push_back(m);
    out.push_back(hp);
    return out;
  };

  for (std::size_t hp = 0; hp < n; ++hp) {
    if (!(sys.entry(hp, hp) == S(1)))
      throw std::invalid_argument("malformed triangular system: diagonal entry is not 1");
    std::vector<std::size_t> lower = sys.below[hp];
    lower.push_back(hp);
    for (std::size_t h : lower) {
      S acc{};
      for (std::size_t m : interval(h, hp)) acc += b.bar(sys.entry(h, m)) * sys.entry(m, hp);
      if (!(acc == S(h == hp ? 1 : 0)))
        throw std::invalid_argument("malformed triangular system: bar is not an involution");
    }
  }

  std::vector<std::map<std::size_t, S>> out(n);
  for (std::size_t hp = 0; hp < n; ++hp) {
    auto& p = out[hp];
    p[hp] = S(1);
    std::vector<std::size_t> lower = sys.below[hp];
    std::stable_sort(lower.begin(), lower.end(), [&](std::size_t x, std::size_t y) {
      return sys.height[x] > sys.height[y];
    });
    for (std::size_t h : lower) {
      // p - bar(p) = sigma
      S sigma{};
      for (std::size_t m : interval(h, hp)) {
        if (m == h) continue;
        auto it = p.find(m);
        if (it != p.end()) sigma += sys.entry(h, m) * b.bar(it->second);
      }
      if (!b.constant_term_zero(sigma) ||
          !(b.positive_part(sigma) == -b.bar(b.negative_part(sigma))))
        throw std::invalid_argument("malformed triangular system: lattice condition fails");
      S ph = b.negative_part(sigma);
      if (!ph.is_zero()) p[h] = ph;
    }
  }
  return out;
}

}  // namespace qcover
