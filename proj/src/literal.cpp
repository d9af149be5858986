#include "affine_lab/literal.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "affine_lab/errors.hpp"

namespace affine_lab {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, LParen, RParen, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  ComplexValue number;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) { advance(); }

  ComplexValue parse() {
    if (tok_.kind == Tok::End) throw ParseError("empty complex literal");
    ComplexValue v = expr();
    if (tok_.kind != Tok::End) fail("unexpected '" + tok_.text + "'");
    if (uses_pi_ && uses_decimal_) fail("literal mixes the exact 2pi*i track with a decimal");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("invalid complex literal '" + std::string(src_) + "': " + what);
  }

  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ >= src_.size()) {
      tok_ = {Tok::End, "<end>", {}};
      return;
    }
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      tok_ = {Tok::Ident, std::string(src_.substr(start, pos_ - start)), {}};
      return;
    }
    ++pos_;
    switch (c) {
      case '+': tok_ = {Tok::Plus, "+", {}}; return;
      case '-': tok_ = {Tok::Minus, "-", {}}; return;
      case '*': tok_ = {Tok::Star, "*", {}}; return;
      case '/': tok_ = {Tok::Slash, "/", {}}; return;
      case '(': tok_ = {Tok::LParen, "(", {}}; return;
      case ')': tok_ = {Tok::RParen, ")", {}}; return;
      default: fail(std::string("unexpected character '") + c + "'");
    }
  }

  std::size_t digits_from(std::size_t p) const {
    while (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) ++p;
    return p;
  }

  void lex_number() {
    const std::size_t start = pos_;
    std::size_t end = digits_from(pos_);
    if (end < src_.size() && src_[end] == '.') {
      const std::size_t frac_end = digits_from(end + 1);
      if (frac_end == end + 1) fail("decimal point without digits");
      double v = 0.0;
      const auto res = std::from_chars(src_.data() + start, src_.data() + frac_end, v);
      if (res.ec != std::errc{}) fail("bad decimal");
      pos_ = frac_end;
      uses_decimal_ = true;
      tok_ = {Tok::Number, std::string(src_.substr(start, frac_end - start)), ComplexValue::approx(v)};
      return;
    }
    mpz_class num(std::string(src_.substr(start, end - start)));
    mpz_class den(1);
    // p/q written without spaces is a single rational token, so `3/4i` is (3/4) i.
    if (end + 1 < src_.size() && src_[end] == '/' && std::isdigit(static_cast<unsigned char>(src_[end + 1]))) {
      const std::size_t den_end = digits_from(end + 1);
      if (den_end < src_.size() && src_[den_end] == '.') fail("rational with decimal denominator");
      den = mpz_class(std::string(src_.substr(end + 1, den_end - end - 1)));
      if (den == 0) throw DomainError("zero denominator in literal");
      end = den_end;
    }
    mpq_class q(num, den);
    q.canonicalize();
    pos_ = end;
    tok_ = {Tok::Number, std::string(src_.substr(start, end - start)), ComplexValue(GaussRational{q})};
  }

  ComplexValue expr() {
    ComplexValue v = term();
    while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
      const bool plus = tok_.kind == Tok::Plus;
      advance();
      const ComplexValue rhs = term();
      v = plus ? v + rhs : v - rhs;
    }
    return v;
  }

  ComplexValue term() {
    ComplexValue v = factor();
    while (tok_.kind == Tok::Star || tok_.kind == Tok::Slash) {
      const bool mul = tok_.kind == Tok::Star;
      advance();
      const ComplexValue rhs = factor();
      v = mul ? v * rhs : v / rhs;
    }
    return v;
  }

  ComplexValue factor() {
    if (tok_.kind == Tok::Minus) {
      advance();
      return -factor();
    }
    if (tok_.kind == Tok::Plus) {
      advance();
      return factor();
    }
    return primary();
  }

  ComplexValue symbol() {
    const std::string name = tok_.text;
    advance();
    if (name == "i") return ComplexValue(GaussRational{0, 1});
    if (name == "pi") {
      uses_pi_ = true;
      return ComplexValue::pi();
    }
    fail("unknown symbol '" + name + "'");
  }

  ComplexValue group() {
    advance();  // (
    ComplexValue v = expr();
    if (tok_.kind != Tok::RParen) fail("missing ')'");
    advance();
    return v;
  }

  ComplexValue primary() {
    switch (tok_.kind) {
      case Tok::Number: {
        ComplexValue v = tok_.number;
        advance();
        while (tok_.kind == Tok::Ident || tok_.kind == Tok::LParen)
          v = v * (tok_.kind == Tok::Ident ? symbol() : group());
        return v;
      }
      case Tok::Ident: return symbol();
      case Tok::LParen: return group();
      default: fail("expected a number, symbol or '('");
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token tok_;
  bool uses_pi_ = false;
  bool uses_decimal_ = false;
};

}  // namespace

ComplexValue parse_complex(std::string_view text) { return Parser(text).parse(); }

}  // namespace affine_lab
