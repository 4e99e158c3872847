#pragma once

// Polynomial expression parser.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' INTEGER)?
//   primary := INTEGER | INTEGER '/' INTEGER | IDENT | '(' expr ')'
//
// '^' binds tightest, then unary minus, then '*', then '+' and '-'. There is
// no implicit multiplication and no general division: '/' only appears
// inside rational literals such as 3/4.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "lnd/poly.hpp"

namespace lnd {

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, const Ring& ring) : text_(text), ring_(ring) {}

  Poly parse() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("empty expression", pos_);
    Poly p = expr();
    skip_ws();
    if (pos_ < text_.size()) {
      throw ParseError(std::string("unexpected '") + text_[pos_] + "' (implicit multiplication is not allowed)", pos_);
    }
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc = term();
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = unary();
    while (accept('*')) acc *= unary();
    return acc;
  }

  Poly unary() {
    if (accept('-')) return -unary();
    return power();
  }

  Poly power() {
    Poly base = primary();
    if (!accept('^')) return base;
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') throw ParseError("negative exponent", start);
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw ParseError("exponent must be a nonnegative integer literal", start);
    std::string digits = read_digits();
    if (pos_ < text_.size() && text_[pos_] == '/') throw ParseError("exponent must be an integer", start);
    if (digits.size() > 6) throw ParseError("exponent too large", start);
    return pow(base, static_cast<unsigned>(std::stoul(digits)));
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Poly primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    std::size_t start = pos_;
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = read_digits();
      if (pos_ + 1 < text_.size() && text_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
        ++pos_;
        std::string den = read_digits();
        Integer d(den);
        if (d == 0) throw ParseError("zero denominator", start);
        Rational q(Integer(num), d);
        q.canonicalize();
        return Poly(ring_, q);
      }
      if (pos_ < text_.size() && text_[pos_] == '/') throw ParseError("'/' is only allowed inside rational literals", pos_);
      return Poly(ring_, Rational(Integer(num)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      auto idx = ring_.index_of(name);
      if (!idx) throw ParseError("undeclared identifier '" + std::string(name) + "'", start);
      return Poly::variable(ring_, *idx);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

  std::string_view text_;
  const Ring& ring_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly parse_poly(std::string_view text, const Ring& ring) { return detail::PolyParser(text, ring).parse(); }

/// Parses in K[x,y,z].
inline Poly parse_xyz(std::string_view text) { return parse_poly(text, Ring::xyz()); }

}  // namespace lnd
