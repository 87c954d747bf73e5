#include <cctype>
#include <map>

#include "clp/forms.hpp"

namespace clp {

namespace {

using Exps = std::array<int, 3>;
using Poly = std::map<Exps, QComplex>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      const Exps e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
      out[e] += ca * cb;
    }
  return out;
}

void poly_add(Poly& a, const Poly& b, bool negate) {
  for (const auto& [e, c] : b) {
    if (negate)
      a[e] -= c;
    else
      a[e] += c;
  }
}

Poly constant(const QComplex& c) { return Poly{{Exps{0, 0, 0}, c}}; }

/// Recursive-descent parser; whitespace is skipped between tokens.
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Poly parse() {
    Poly p = form();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::ParseError, what + " at position " + std::to_string(pos_) + " in \"" +
                                      std::string(text_) + "\"");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool starts_factor(char c) const {
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'i' || c == 'x' || c == 'y' || c == 'z' || c == '(';
  }

  Poly form() {
    Poly acc;
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = text_[pos_] == '-';
      ++pos_;
    }
    poly_add(acc, term(), negate);
    for (;;) {
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      poly_add(acc, term(), c == '-');
    }
    return acc;
  }

  Poly term() {
    if (!starts_factor(peek())) fail("expected a term");
    Poly acc = factor();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        if (!starts_factor(peek())) fail("expected a factor after '*'");
        acc = poly_mul(acc, factor());
      } else if (starts_factor(c)) {
        acc = poly_mul(acc, factor());
      } else {
        break;
      }
    }
    return acc;
  }

  Poly factor() {
    Poly base = atom();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      const mpz_class e = uint_literal();
      if (e > 64) fail("exponent too large");
      Poly out = constant(QComplex(1));
      for (long k = 0; k < e.get_si(); ++k) out = poly_mul(out, base);
      return out;
    }
    return base;
  }

  Poly atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Poly inner = form();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == 'i') {
      ++pos_;
      return constant(QComplex::i());
    }
    if (c == 'x' || c == 'y' || c == 'z') {
      ++pos_;
      Exps e{0, 0, 0};
      e[c - 'x'] = 1;
      return Poly{{e, QComplex(1)}};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpq_class value(uint_literal());
      if (peek() == '/') {
        ++pos_;
        skip_ws();
        const mpz_class den = uint_literal();
        if (den == 0) fail("zero denominator");
        value = mpq_class(value.get_num(), den);
        value.canonicalize();
      }
      return constant(QComplex(value));
    }
    fail("expected a number, variable, 'i' or '('");
  }

  mpz_class uint_literal() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an unsigned integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ExactForm parse_form(std::string_view text, std::optional<int> degree_hint) {
  Poly poly = Parser(text).parse();
  std::erase_if(poly, [](const auto& kv) { return kv.second.is_zero(); });
  if (poly.empty()) return ExactForm(degree_hint.value_or(0));
  const auto& first = poly.begin()->first;
  const int d = first[0] + first[1] + first[2];
  for (const auto& [e, c] : poly)
    if (e[0] + e[1] + e[2] != d)
      throw Error(Errc::NotHomogeneous, "terms of total degree " + std::to_string(d) + " and " +
                                            std::to_string(e[0] + e[1] + e[2]) + " in \"" +
                                            std::string(text) + "\"");
  if (degree_hint && *degree_hint != d)
    throw Error(Errc::DegreeMismatch, "expected degree " + std::to_string(*degree_hint) + ", got " +
                                          std::to_string(d));
  ExactForm f(d);
  for (const auto& [e, c] : poly) f.coeff(e[0], e[1], e[2]) = c;
  return f;
}

std::string format_form(const ExactForm& f) {
  std::string out;
  const int d = f.degree();
  for (int i = 0; i < static_cast<int>(f.size()); ++i) {
    const QComplex& c = f[i];
    if (c.is_zero()) continue;
    const Exponents e = monomial_at(d, i);
    std::string mono;
    auto add_var = [&mono](char v, int k) {
      if (k == 0) return;
      if (!mono.empty()) mono += '*';
      mono += v;
      if (k > 1) mono += "^" + std::to_string(k);
    };
    add_var('x', e.a);
    add_var('y', e.b);
    add_var('z', e.c);

    bool negative = false;
    std::string coeff;
    if (c.is_real()) {
      negative = sgn(c.re()) < 0;
      const mpq_class mag = abs(c.re());
      if (mag != 1 || mono.empty()) coeff = mag.get_str();
    } else if (sgn(c.re()) == 0) {
      negative = sgn(c.im()) < 0;
      const mpq_class mag = abs(c.im());
      // "p/q i" is outside the grammar; write rational imaginary parts as (p/q)*i.
      if (mag == 1)
        coeff = "i";
      else if (mag.get_den() == 1)
        coeff = mag.get_str() + "i";
      else
        coeff = "(" + mag.get_str() + ")*i";
    } else {
      coeff = "(" + c.re().get_str();
      const mpq_class im = c.im();
      coeff += sgn(im) < 0 ? "-" : "+";
      const mpq_class mag = abs(im);
      if (mag == 1)
        coeff += "i";
      else if (mag.get_den() == 1)
        coeff += mag.get_str() + "i";
      else
        coeff += "(" + mag.get_str() + ")*i";
      coeff += ")";
    }
    std::string piece = coeff;
    if (!coeff.empty() && !mono.empty()) piece += '*';
    piece += mono;
    if (out.empty())
      out = (negative ? "-" : "") + piece;
    else
      out += (negative ? " - " : " + ") + piece;
  }
  return out.empty() ? "0" : out;
}

}  // namespace clp
