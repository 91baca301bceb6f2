#pragma once

// Polynomial input: either a coefficient list "c0,c1,...,cn" (low to high)
// or an expression over x with integers, + - * ^, parentheses and phi(k)
// for the k-th cyclotomic polynomial.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "faltings/errors.hpp"
#include "faltings/intpoly.hpp"

namespace faltings {

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : s_(text) {}

  Poly parse() {
    skip();
    if (pos_ == s_.size()) fail("empty input");
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(pos_ + 1) + " in \"" + std::string(s_) + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return c == '(' || c == 'x' || c == 'X' || c == 'p' || std::isdigit(static_cast<unsigned char>(c));
  }

  Poly expr() {
    Poly acc = term();
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc = acc + term();
      } else if (peek('-')) {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  // Explicit '*' or juxtaposition ("3x", "2(x+1)").
  Poly term() {
    Poly acc = unary();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = acc * unary();
      } else if (peek('/')) {
        throw NonIntegerCoefficient("division at position " + std::to_string(pos_ + 1) +
                                    " would give non-integer coefficients");
      } else if (starts_factor()) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  Poly unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  Poly power() {
    Poly base = atom();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t at = pos_;
      BigInt e = integer();
      if (e > 4096) {
        pos_ = at;
        fail("exponent too large");
      }
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Poly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return p;
    }
    if (c == 'x' || c == 'X') {
      ++pos_;
      return Poly::x();
    }
    if (s_.substr(pos_, 3) == "phi") {
      pos_ += 3;
      if (!peek('(')) fail("expected '(' after phi");
      ++pos_;
      skip();
      std::size_t at = pos_;
      BigInt k = integer();
      if (k < 1 || k > 1000) {
        pos_ = at;
        fail("cyclotomic index must lie in 1..1000");
      }
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return cyclotomic(static_cast<int>(k));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Poly::constant(integer());
    fail(std::string("unexpected '") + c + "'");
  }

  BigInt integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E'))
      throw NonIntegerCoefficient("non-integer literal at position " + std::to_string(start + 1));
    return BigInt(std::string(s_.substr(start, pos_ - start)));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

inline std::string trim_copy(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline BigInt parse_list_entry(const std::string& item, std::size_t offset) {
  std::string t = trim_copy(item);
  std::size_t i = 0;
  if (!t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
  if (i == t.size()) throw ParseError("empty coefficient at position " + std::to_string(offset + 1));
  for (std::size_t k = i; k < t.size(); ++k) {
    char c = t[k];
    if (c == '.' || c == 'e' || c == 'E' || c == '/')
      throw NonIntegerCoefficient("coefficient \"" + t + "\" is not an integer");
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError("bad coefficient \"" + t + "\" at position " + std::to_string(offset + 1));
  }
  BigInt v(t.substr(i));
  return t[0] == '-' ? BigInt(-v) : v;
}

}  // namespace detail

// Exact coefficients as written, before normalization.
inline Poly parse_poly_raw(std::string_view text) {
  if (text.find(',') != std::string_view::npos) {
    std::vector<BigInt> coeffs;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = text.find(',', start);
      std::string_view item = text.substr(start, comma == std::string_view::npos ? text.size() - start : comma - start);
      coeffs.push_back(detail::parse_list_entry(std::string(item), start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return Poly(std::move(coeffs));
  }
  return detail::PolyParser(text).parse();
}

inline IntPolynomial parse_poly(std::string_view text) {
  Poly p = parse_poly_raw(text);
  if (p.is_zero()) throw ZeroPolynomial("\"" + std::string(text) + "\" is the zero polynomial");
  return IntPolynomial(p);
}

// One expression per line; '#' starts a comment.
inline std::vector<IntPolynomial> parse_corpus(std::string_view text) {
  std::vector<IntPolynomial> out;
  std::size_t start = 0, line_no = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    std::string t = detail::trim_copy(line);
    if (!t.empty()) {
      try {
        out.push_back(parse_poly(t));
      } catch (const Error& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return out;
}

}  // namespace faltings
