#pragma once

#include <cctype>
#include <string>

#include "semilin/ratfunc.hpp"

namespace semilin {

struct SyntaxError : Error {
  size_t pos;
  SyntaxError(const std::string& msg, size_t pos)
      : Error(msg + " (at position " + std::to_string(pos + 1) + ")"), pos(pos) {}
};

namespace detail {

// expr   := term (('+'|'-') term)*
// term   := factor (('*'|'/') factor)*
// factor := base ('^' '-'? digits)?
// base   := identifier | integer | '(' expr ')' | '-' factor
class ExprParser {
 public:
  ExprParser(RingPtr R, const std::string& s) : R_(std::move(R)), s_(s) {}

  RatFunc parse() {
    RatFunc v = expr();
    skip_ws();
    if (pos_ != s_.size()) {
      if (starts_operand())
        throw SyntaxError("implicit multiplication is not supported; insert '*'", pos_);
      throw SyntaxError("unexpected trailing input", pos_);
    }
    return v;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool starts_operand() {
    char c = peek();
    return std::isalpha((unsigned char)c) || std::isdigit((unsigned char)c) || c == '(';
  }

  RatFunc expr() {
    RatFunc v = term();
    while (true) {
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        break;
    }
    return v;
  }

  RatFunc term() {
    RatFunc v = factor();
    while (true) {
      if (eat('*'))
        v = v * factor();
      else if (eat('/')) {
        size_t at = pos_;
        RatFunc d = factor();
        if (d.is_zero()) throw SyntaxError("division by zero", at);
        v = v / d;
      } else if (starts_operand()) {
        throw SyntaxError("implicit multiplication is not supported; insert '*'", pos_);
      } else
        break;
    }
    return v;
  }

  RatFunc factor() {
    RatFunc v = base();
    if (eat('^')) {
      bool neg = eat('-');
      size_t at = pos_;
      skip_ws();
      std::string digits;
      while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) digits += s_[pos_++];
      if (digits.empty()) throw SyntaxError("expected an integer exponent after '^'", at);
      long e = std::stol(digits);
      if (neg && v.is_zero()) throw SyntaxError("division by zero", at);
      return v.pow(neg ? -e : e);
    }
    return v;
  }

  RatFunc base() {
    skip_ws();
    if (pos_ >= s_.size()) throw SyntaxError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc v = expr();
      if (!eat(')')) throw SyntaxError("expected ')'", pos_);
      return v;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit((unsigned char)c)) {
      std::string digits;
      while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) digits += s_[pos_++];
      return RatFunc::constant(R_, mpq_class(mpz_class(digits)));
    }
    if (std::isalpha((unsigned char)c)) {
      size_t at = pos_;
      std::string name;
      while (pos_ < s_.size() &&
             (std::isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_'))
        name += s_[pos_++];
      int idx = R_->index_of(name);
      if (idx >= 0) return RatFunc::var(R_, idx);
      if (R_->K->is_extension() && name == R_->K->gen)
        return RatFunc::constant(R_, FieldElem::generator(R_->K));
      throw SyntaxError("unknown variable '" + name + "'", at);
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  RingPtr R_;
  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace detail

inline RatFunc parse_ratfunc(const RingPtr& R, const std::string& s) {
  return detail::ExprParser(R, s).parse();
}

inline Poly parse_poly(const RingPtr& R, const std::string& s) {
  RatFunc f = parse_ratfunc(R, s);
  if (!f.is_polynomial()) throw Error("expected a polynomial, got a proper fraction: " + s);
  return f.num();
}

}  // namespace semilin
