#pragma once

// Reference normal form built only from the defining relations, with ordinary
// (undivided) powers. Independent of the divided-power commutation formulas
// used by the library.

#include <map>
#include <tuple>

#include "qcover/pbw.hpp"

namespace oracle {

using qcover::PiRational;
using qcover::PiScalar;

// (sector, a, b, c) -> coefficient of F^a K^b E^c
using Naive = std::map<std::tuple<int, int, int, int>, PiRational>;

inline void add(Naive& x, std::tuple<int, int, int, int> k, const PiRational& c) {
  if (c.is_zero()) return;
  auto [it, ins] = x.try_emplace(k, c);
  if (!ins) {
    it->second += c;
    if (it->second.is_zero()) x.erase(it);
  }
}

inline PiRational qpow(int e) { return PiRational(PiScalar::q_power(e)); }
inline PiRational pi() { return PiRational(PiScalar::pi()); }

// E^c F in sector s.
inline Naive e_power_times_f(int s, int c) {
  Naive r;
  if (c == 0) {
    add(r, {s, 1, 0, 0}, PiRational(1));
    return r;
  }
  // E^c F = pi (E^{c-1} F) E + E^{c-1} (pi^s K - K^-1)/(pi q - q^-1)
  for (const auto& [k, v] : e_power_times_f(s, c - 1)) {
    auto [ss, a, b, cc] = k;
    add(r, {ss, a, b, cc + 1}, v * pi());
  }
  PiRational dinv = PiRational(qcover::qdelta()).inverse();
  // E^{c-1} K^{+-1} = q^{-+2(c-1)} K^{+-1} E^{c-1}
  add(r, {s, 0, 1, c - 1}, dinv * qpow(-2 * (c - 1)) * (s ? pi() : PiRational(1)));
  add(r, {s, 0, -1, c - 1}, -(dinv * qpow(2 * (c - 1))));
  return r;
}

// x * g for a generator g in {'E', 'F', 'K', 'k'} ('k' = K^-1).
inline Naive times_generator(const Naive& x, char g) {
  Naive r;
  for (const auto& [key, v] : x) {
    auto [s, a, b, c] = key;
    switch (g) {
      case 'E': add(r, {s, a, b, c + 1}, v); break;
      case 'K': add(r, {s, a, b + 1, c}, v * qpow(-2 * c)); break;
      case 'k': add(r, {s, a, b - 1, c}, v * qpow(2 * c)); break;
      case 'F':
        for (const auto& [k2, w] : e_power_times_f(s, c)) {
          auto [s2, a2, b2, c2] = k2;
          add(r, {s, a + a2, b + b2, c2}, v * w * qpow(-2 * b * a2));
        }
        break;
    }
  }
  return r;
}

inline Naive word(int s, const std::string& letters) {
  Naive x;
  add(x, {s, 0, 0, 0}, PiRational(1));
  for (char g : letters) x = times_generator(x, g);
  return x;
}

// Rewrite in divided powers: F^a = [a]! F^(a).
inline qcover::PBWElement to_divided(const Naive& x) {
  qcover::PBWElement r;
  for (const auto& [key, v] : x) {
    auto [s, a, b, c] = key;
    r.add_term({s, a, b, c}, v * PiRational(qcover::qfact(a) * qcover::qfact(c)));
  }
  return r;
}

}  // namespace oracle
