#pragma once

// Recursive-descent parser shared by the number-field and polynomial readers.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := number | 'sqrt' '(' expr ')' | identifier | '(' expr ')'
//
// Traits supplies the value-specific pieces: constant(), sqrt(), identifier(),
// divide() and power().

#include <cctype>
#include <string>
#include <string_view>

#include "cubic/error.hpp"
#include "cubic/numfield.hpp"

namespace cubic::detail {

template <class Value, class Traits>
class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const Traits& traits) : text_(text), traits_(traits) {}

  Value parse() {
    Value v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError,
                msg + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Value expr() {
    Value acc = term();
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Value term() {
    Value acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        acc = traits_.divide(acc, unary());
      } else {
        return acc;
      }
    }
  }

  Value unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Value power() {
    Value base = primary();
    if (accept('^')) {
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > 64) fail("exponent too large");
      return traits_.power(base, static_cast<unsigned>(e));
    }
    return base;
  }

  Value primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      if (name == "sqrt") {
        expect('(');
        Value v = expr();
        expect(')');
        return traits_.sqrt(v);
      }
      return traits_.identifier(name);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Value number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    return traits_.constant(FieldElement(parse_rational(text_.substr(start, pos_ - start))));
  }

  std::string_view text_;
  const Traits& traits_;
  std::size_t pos_ = 0;
};

}  // namespace cubic::detail
