#ifndef TILTED_TEXT_FORMAT_HPP
#define TILTED_TEXT_FORMAT_HPP

#include "tilted/bell_ops.hpp"

#include <cctype>
#include <sstream>
#include <string>

namespace tilted {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string ratpoly_str(const RatPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    const Rational& c = p.coeffs()[i];
    if (c == 0) continue;
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1 || i == 0) {
      os << numerator(mag);
      if (denominator(mag) != 1) os << "/" << denominator(mag);
      if (i > 0) os << "*";
    }
    if (i == 1) os << "st";
    if (i > 1) os << "st^" << i;
  }
  return os.str();
}

inline std::string ratfun_str(const RatFun& f) {
  if (f.den() == RatPoly(1)) return "(" + ratpoly_str(f.num()) + ")";
  return "(" + ratpoly_str(f.num()) + ")/(" + ratpoly_str(f.den()) + ")";
}

}  // namespace detail

inline std::string scalar_str(const Scalar& x) {
  if (x.is_zero()) return "0";
  std::string out;
  auto piece = [&out](const RatFun& f, const char* basis) {
    if (f.is_zero()) return;
    if (!out.empty()) out += " + ";
    out += detail::ratfun_str(f);
    if (*basis) {
      out += "*";
      out += basis;
    }
  };
  piece(x.a(), "");
  piece(x.b(), "ct");
  piece(x.p(), "u");
  piece(x.q(), "ct*u");
  return out;
}

/// Canonical printer: terms in monomial order, coefficients parenthesized.
inline std::string poly_str(const NcPoly<Scalar>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    if (!out.empty()) out += " + ";
    if (c == Scalar(1)) {
      out += m.str();
    } else if (m.is_identity()) {
      out += "(" + scalar_str(c) + ")";
    } else {
      out += "(" + scalar_str(c) + ")*" + m.str();
    }
  }
  return out;
}

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(const std::string& text) : text_(text) {}

  NcPoly<Scalar> parse() {
    NcPoly<Scalar> out = parse_expr();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("trailing characters at position " +
                       std::to_string(pos_));
    return out;
  }

 private:
  using P = NcPoly<Scalar>;

  NcPoly<Scalar> parse_expr() {
    skip_ws();
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    P acc = parse_term();
    if (neg) acc = -acc;
    for (;;) {
      skip_ws();
      const char ch = peek();
      if (ch == '+') {
        ++pos_;
        acc = acc + parse_term();
      } else if (ch == '-') {
        ++pos_;
        acc = acc - parse_term();
      } else {
        return acc;
      }
    }
  }

  NcPoly<Scalar> parse_term() {
    P acc = parse_pow();
    for (;;) {
      skip_ws();
      const char ch = peek();
      if (ch == '*') {
        ++pos_;
        acc = acc * parse_pow();
      } else if (ch == '/') {
        ++pos_;
        P rhs = parse_pow();
        acc = as_scalar(rhs).inverse() * acc;
      } else {
        return acc;
      }
    }
  }

  NcPoly<Scalar> parse_pow() {
    P base = parse_atom();
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(text_[pos_])) ++pos_;
      if (pos_ == start) throw ParseError("expected exponent");
      int e = std::stoi(text_.substr(start, pos_ - start));
      P acc = P::identity();
      for (int i = 0; i < e; ++i) acc = acc * base;
      return acc;
    }
    return base;
  }

  NcPoly<Scalar> parse_atom() {
    skip_ws();
    const char ch = peek();
    if (ch == '(') {
      ++pos_;
      P inner = parse_expr();
      skip_ws();
      if (peek() != ')') throw ParseError("expected ')'");
      ++pos_;
      return inner;
    }
    if (ch == '-') {
      ++pos_;
      return -parse_atom();
    }
    if (std::isdigit(ch)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(text_[pos_])) ++pos_;
      return P(Scalar(Rational(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(ch)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(text_[pos_]) || text_[pos_] == '_'))
        ++pos_;
      const std::string name = text_.substr(start, pos_ - start);
      if (name == "A0") return P::a(0);
      if (name == "A1") return P::a(1);
      if (name == "B0") return P::b(0);
      if (name == "B1") return P::b(1);
      if (name == "st") return P(Scalar::st());
      if (name == "ct") return P(Scalar::ct());
      if (name == "u") return P(Scalar::u());
      if (name == "c") return P(Scalar::cos2t());
      if (name == "s") return P(Scalar::sin2t());
      if (name == "alpha") return P(Scalar::alpha());
      if (name == "imax") return P(Scalar::imax());
      throw ParseError("unknown identifier '" + name + "'");
    }
    throw ParseError("unexpected character at position " +
                     std::to_string(pos_));
  }

  static Scalar as_scalar(const NcPoly<Scalar>& p) {
    if (p.is_zero()) return Scalar(0);
    if (p.terms().size() != 1 || !p.terms().begin()->first.is_identity())
      throw ParseError("division by a non-scalar polynomial");
    return p.terms().begin()->second;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(text_[pos_])) ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline NcPoly<Scalar> parse_poly(const std::string& text) {
  return detail::PolyParser(text).parse();
}

}  // namespace tilted

#endif  // TILTED_TEXT_FORMAT_HPP
