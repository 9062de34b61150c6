#include "qsep/parse.hpp"

#include <cctype>
#include <stdexcept>

#include "qsep/symbols.hpp"

namespace qsep {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  RatFunc run() {
    RatFunc r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return r;
  }

 private:
  std::string_view s_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("parse error at " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFunc expr() {
    RatFunc r;
    bool neg = eat('-');
    if (!neg) eat('+');
    r = term();
    if (neg) r = -r;
    for (;;) {
      if (eat('+')) {
        r += term();
      } else if (eat('-')) {
        r -= term();
      } else {
        return r;
      }
    }
  }

  RatFunc term() {
    RatFunc r = factor();
    for (;;) {
      if (eat('*')) {
        r *= factor();
      } else if (eat('/')) {
        RatFunc d = factor();
        if (d.is_zero()) fail("division by zero");
        r /= d;
      } else {
        return r;
      }
    }
  }

  RatFunc factor() {
    RatFunc b = primary();
    if (eat('^')) {
      int e = exponent();
      if (e < 0 && b.is_zero()) fail("zero to a negative power");
      b = b.pow(e);
    }
    return b;
  }

  int exponent() {
    bool paren = eat('(');
    bool neg = eat('-');
    skip();
    size_t st = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (st == pos_) fail("expected integer exponent");
    int e = std::stoi(std::string(s_.substr(st, pos_ - st)));
    if (paren && !eat(')')) fail("expected )");
    return neg ? -e : e;
  }

  RatFunc primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc r = expr();
      if (!eat(')')) fail("expected )");
      return r;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RatFunc(mpz_class(std::string(s_.substr(st, pos_ - st))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t st = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(st, pos_ - st));
      if (name == "ell") name = "l";
      return RatFunc::var(symbol_id(name));
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

RatFunc parse_ratfunc(std::string_view text) { return Parser(text).run(); }

LaurentPoly parse_laurent(std::string_view text, std::vector<std::string> vars) {
  return LaurentPoly::from_ratfunc(parse_ratfunc(text), std::move(vars));
}

}  // namespace qsep
