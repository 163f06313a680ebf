#pragma once

#include <map>

#include "qcover/triangular.hpp"
#include "qcover/udot.hpp"

namespace qcover {

/// A U-dot element with pi fixed to +1 or -1.
struct SpecializedUDot {
  int pi = 1;
  std::map<UDotMonomial, RatFunc> terms;
  friend bool operator==(const SpecializedUDot&, const SpecializedUDot&) = default;
};

SpecializedUDot specialize_udot(const UDotElement& x, int sign);
std::string format_specialized(const SpecializedUDot& x);

/// Entrywise pi -> sign.
TriangularSystem<Laurent> specialize_system(const TriangularSystem<PiScalar>& sys, int sign);
std::vector<std::map<std::size_t, Laurent>> specialize_solution(
    const std::vector<std::map<std::size_t, PiScalar>>& sol, int sign);

/// Canonical basis of the modified algebra for a, b <= B, |k| <= K, computed
/// from scratch over Z[q, q^-1] with pi fixed to sign (+1: quantum sl(2)):
/// canonical basis of L(s,t) by the triangular solver, then the unique
/// combination of E^(a-i) 1 F^(b-i) sending eta (x) nu to it.
std::map<CBIndex, SpecializedUDot> sl2_cb_oracle(int B, int K, int sign = 1);
/// The same for the single right weight k.
std::map<CBIndex, SpecializedUDot> sl2_cb_oracle_at(int B, int k, int sign = 1);

}  // namespace qcover
