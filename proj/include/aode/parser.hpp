#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aode/diffpoly.hpp"
#include "aode/errors.hpp"

namespace aode {

namespace detail {

enum class Tok { Number, Ident, Prime, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, Equals, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  while (i < src.size()) {
    const char ch = src[i];
    if (ch == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++col;
      ++i;
      continue;
    }
    const std::size_t start_col = col;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Number, std::string(src.substr(i, j - i)), line, start_col});
      col += j - i;
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), line, start_col});
      col += j - i;
      i = j;
      continue;
    }
    Tok kind;
    switch (ch) {
      case '\'': kind = Tok::Prime; break;
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case ',': kind = Tok::Comma; break;
      case '=': kind = Tok::Equals; break;
      default: {
        std::string shown = (static_cast<unsigned char>(ch) < 0x80) ? std::string(1, ch) : "non-ASCII byte";
        throw ParseError("unexpected character '" + shown + "'", line, start_col);
      }
    }
    out.push_back({kind, std::string(1, ch), line, start_col});
    ++col;
    ++i;
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

/// Polynomial in y, y', ... with rational-function coefficients.
class Lowered {
 public:
  Lowered() = default;
  static Lowered constant(const RFunc& c) {
    Lowered l;
    if (!c.is_zero()) l.t_.emplace(ExpVec{}, c);
    return l;
  }
  static Lowered derivative(std::size_t k) {
    std::vector<unsigned> e(k + 1, 0);
    e[k] = 1;
    Lowered l;
    l.t_.emplace(ExpVec(std::move(e)), RFunc(upoly_const(1)));
    return l;
  }

  const RawTerms& terms() const { return t_; }
  bool y_free() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_zero()); }
  RFunc constant_value() const { return t_.empty() ? RFunc() : t_.begin()->second; }

  Lowered& operator+=(const Lowered& o) {
    for (const auto& [I, c] : o.t_) add(I, c);
    return *this;
  }
  Lowered operator-() const {
    Lowered l = *this;
    for (auto& [I, c] : l.t_) c = -c;
    return l;
  }
  friend Lowered operator*(const Lowered& a, const Lowered& b) {
    Lowered out;
    for (const auto& [I, c] : a.t_) {
      for (const auto& [J, d] : b.t_) {
        const std::size_t len = std::max(I.size(), J.size());
        std::vector<unsigned> e(len);
        for (std::size_t k = 0; k < len; ++k) e[k] = I[k] + J[k];
        out.add(ExpVec(std::move(e)), c * d);
      }
    }
    return out;
  }
  Lowered scaled_by(const RFunc& s) const {
    Lowered l;
    for (const auto& [I, c] : t_) l.add(I, c * s);
    return l;
  }

 private:
  void add(const ExpVec& I, const RFunc& c) {
    auto [it, fresh] = t_.emplace(I, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }
  RawTerms t_;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

  RawTerms parse() {
    Lowered lhs = expr();
    if (peek().kind == Tok::Equals) {
      next();
      Lowered rhs = expr();
      lhs += -rhs;
    }
    if (peek().kind != Tok::End) fail(peek(), "unexpected '" + peek().text + "'");
    return lhs.terms();
  }

 private:
  static constexpr unsigned long kMaxExponent = 1000;
  static constexpr unsigned long kMaxDerivative = 1000;

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  [[noreturn]] static void fail(const Token& t, const std::string& msg) { throw ParseError(msg, t.line, t.column); }

  void expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) {
      const std::string got = peek().kind == Tok::End ? "end of input" : "'" + peek().text + "'";
      fail(peek(), "expected " + what + ", got " + got);
    }
    next();
  }

  unsigned long natural(const std::string& what, unsigned long limit) {
    const Token& t = peek();
    if (t.kind != Tok::Number) fail(t, "expected " + what);
    next();
    if (t.text.size() > 9 || std::stoul(t.text) > limit) fail(t, what + " too large (limit " + std::to_string(limit) + ")");
    return std::stoul(t.text);
  }

  Lowered expr() {
    Lowered acc = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const bool minus = next().kind == Tok::Minus;
      Lowered rhs = term();
      acc += minus ? -rhs : rhs;
    }
    return acc;
  }

  Lowered term() {
    Lowered acc = unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const Token op = next();
      const Token& at = peek();
      Lowered rhs = unary();
      if (op.kind == Tok::Star) {
        acc = acc * rhs;
      } else {
        if (!rhs.y_free()) fail(at, "denominator must not involve y");
        const RFunc d = rhs.constant_value();
        if (d.is_zero()) fail(at, "division by zero");
        acc = acc.scaled_by(RFunc(d.den(), d.num()));
      }
    }
    return acc;
  }

  Lowered unary() {
    if (peek().kind == Tok::Minus) {
      next();
      return -unary();
    }
    return factor();
  }

  Lowered factor() {
    const bool is_y = peek().kind == Tok::Ident && peek().text == "y";
    Lowered b = base();
    if (peek().kind == Tok::Caret) {
      next();
      if (peek().kind == Tok::LParen) {
        if (is_y) fail(peek(), "'y^(k)' is ambiguous; write D(y,k) for the k-th derivative or y^k for a power");
        fail(peek(), "exponent must be a nonnegative integer literal");
      }
      const unsigned long e = natural("exponent", kMaxExponent);
      Lowered acc = Lowered::constant(RFunc(upoly_const(1)));
      for (unsigned long k = 0; k < e; ++k) acc = acc * b;
      return acc;
    }
    return b;
  }

  Lowered base() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        next();
        return Lowered::constant(RFunc(upoly_const(Rat(Int(t.text, 10)))));
      }
      case Tok::LParen: {
        next();
        Lowered inner = expr();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Ident: {
        if (t.text == "x") {
          next();
          return Lowered::constant(RFunc(upoly_x()));
        }
        if (t.text == "y") {
          next();
          std::size_t k = 0;
          while (peek().kind == Tok::Prime) {
            next();
            ++k;
          }
          return Lowered::derivative(k);
        }
        if (t.text == "D") {
          next();
          expect(Tok::LParen, "'(' after D");
          if (!(peek().kind == Tok::Ident && peek().text == "y")) fail(peek(), "expected 'y' in D(y,k)");
          next();
          expect(Tok::Comma, "','");
          const unsigned long k = natural("derivative order", kMaxDerivative);
          expect(Tok::RParen, "')'");
          return Lowered::derivative(k);
        }
        fail(t, "unknown symbol '" + t.text + "' (only x, y and D(y,k) are allowed; instantiate parameters with numbers)");
      }
      case Tok::End:
        fail(t, "unexpected end of input");
      default:
        fail(t, "unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Terms of lhs - rhs with rational-function coefficients.
inline RawTerms parse_equation(std::string_view text) { return detail::Parser(text).parse(); }

/// Parse and normalize.
inline DiffPoly parse_diffpoly(std::string_view text) { return normalize(parse_equation(text)); }

}  // namespace aode
