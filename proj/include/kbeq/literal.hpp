// Copyright 2026 The kbeq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Number literals: integers, `p/q`, and arithmetic over `eps`, e.g.
// `1 - 2*eps + eps^2` or `(1-eps)/(1+eps)`.

#ifndef KBEQ_LITERAL_HPP
#define KBEQ_LITERAL_HPP

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "kbeq/eps.hpp"

namespace kbeq {

class LiteralError : public Error {
 public:
  LiteralError(const std::string& what, std::size_t offset)
      : Error(what), offset_(offset) {}
  /// Byte offset of the problem within the parsed text.
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

namespace detail {

class LiteralParser {
 public:
  LiteralParser(std::string_view text, std::size_t pos) : s_(text), pos_(pos) {}

  EpsNum expression() {
    EpsNum v = term();
    for (;;) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        v = v + term();
      } else if (peek() == '-' && peek(1) != '>') {
        ++pos_;
        v = v - term();
      } else {
        return v;
      }
    }
  }

  std::size_t pos() const { return pos_; }

 private:
  EpsNum term() {
    EpsNum v = unary();
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        v = v * unary();
      } else if (peek() == '/') {
        std::size_t at = pos_++;
        EpsNum d = unary();
        if (d.is_zero()) throw LiteralError("division by zero in number literal", at);
        v = v / d;
      } else {
        return v;
      }
    }
  }

  EpsNum unary() {
    skip_ws();
    if (peek() == '-' && peek(1) != '>') {
      ++pos_;
      return -unary();
    }
    if (peek() == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  EpsNum power() {
    EpsNum base = atom();
    skip_ws();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    std::size_t at = pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      throw LiteralError("expected a non-negative integer exponent", at);
    Rational::Integer e = integer();
    if (e > 64) throw LiteralError("exponent too large", at);
    EpsNum r(1);
    for (int k = 0; k < e.convert_to<int>(); ++k) r = r * base;
    return r;
  }

  EpsNum atom() {
    skip_ws();
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return EpsNum(Rational(integer()));
    if (s_.substr(pos_, 3) == "eps" && !ident_char(peek(3))) {
      pos_ += 3;
      return EpsNum::eps();
    }
    if (s_.substr(pos_, 2) == "\xCE\xB5") {  // UTF-8 epsilon
      pos_ += 2;
      return EpsNum::eps();
    }
    if (c == '(') {
      ++pos_;
      EpsNum v = expression();
      skip_ws();
      if (peek() != ')') throw LiteralError("expected ')' in number literal", pos_);
      ++pos_;
      return v;
    }
    if (c == '\0') throw LiteralError("expected a number", pos_);
    throw LiteralError(std::string("unexpected '") + c + "' in number literal", pos_);
  }

  Rational::Integer integer() {
    Rational::Integer v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      ++pos_;
    }
    return v;
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0';
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string_view s_;
  std::size_t pos_;
};

}  // namespace detail

/// Parses the longest number literal starting at `pos` and advances `pos`
/// past it. Stops before any character that cannot continue the expression.
inline EpsNum parse_number_prefix(std::string_view text, std::size_t& pos) {
  detail::LiteralParser p(text, pos);
  EpsNum v = p.expression();
  pos = p.pos();
  return v;
}

/// Parses `text` as a single number literal; trailing input is an error.
inline EpsNum parse_number(std::string_view text) {
  std::size_t pos = 0;
  EpsNum v = parse_number_prefix(text, pos);
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size()) throw LiteralError("trailing characters after number", pos);
  return v;
}

/// Like parse_number, but the value must not depend on eps.
inline Rational parse_rational(std::string_view text) {
  EpsNum v = parse_number(text);
  if (!v.is_standard()) throw LiteralError("expected a standard (eps-free) number", 0);
  return v.to_rational();
}

}  // namespace kbeq

#endif  // KBEQ_LITERAL_HPP
