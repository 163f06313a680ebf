#pragma once

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "qcover/laurent.hpp"
#include "qcover/pi_ring.hpp"

namespace qcover::detail {

// Hand-written recursive-descent helper shared by the text grammars.
struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }
  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  char peek_raw() const { return pos < text.size() ? text[pos] : '\0'; }
  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool accept(std::string_view s) {
    skip_ws();
    if (text.substr(pos, s.size()) == s) {
      pos += s.size();
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos); }

  bool at_integer() {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return true;
    if ((c == '-' || c == '+') && pos + 1 < text.size() &&
        std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
      return true;
    }
    return false;
  }
  Integer integer() {
    skip_ws();
    std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    std::size_t digits = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digits) {
      pos = start;
      fail("expected integer");
    }
    std::string s(text.substr(start, pos - start));
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s);
  }
  long small_integer() {
    std::size_t start = pos;
    Integer v = integer();
    if (!v.fits_slong_p()) {
      pos = start;
      fail("integer out of range");
    }
    return v.get_si();
  }
};

/// Scalar sum at the cursor (the pi_ring grammar, without end check).
PiScalar parse_scalar_expr(Cursor& cur);
/// "(scalar)" or "(num)/(den)" followed by "*"; nullopt (cursor untouched)
/// when no parenthesized coefficient starts here.
std::optional<PiRational> parse_coefficient(Cursor& cur);
/// "" for 1, otherwise "<coefficient> * ".
std::string coefficient_prefix(const PiRational& c);

}  // namespace qcover::detail
