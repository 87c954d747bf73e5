#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <type_traits>

#include <gmpxx.h>

namespace clp {

using Complex = std::complex<double>;

enum class Mode { Exact, Floating };

/// Exact complex number with rational real and imaginary parts.
class QComplex {
 public:
  QComplex() = default;
  QComplex(long v) : re_(v) {}  // NOLINT: implicit from integers is intended
  QComplex(int v) : re_(v) {}   // NOLINT
  QComplex(mpq_class re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  QComplex(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static QComplex i() { return {mpq_class(0), mpq_class(1)}; }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  QComplex conj() const { return {re_, -im_}; }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  QComplex& operator+=(const QComplex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  QComplex& operator-=(const QComplex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  QComplex& operator*=(const QComplex& o);
  QComplex& operator/=(const QComplex& o);

  friend QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
  friend QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
  friend QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
  friend QComplex operator/(QComplex a, const QComplex& b) { return a /= b; }
  friend QComplex operator-(const QComplex& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const QComplex& a, const QComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }

  /// "p/q", "p/q+r/si", "r/si" in canonical form; "0" for zero.
  std::string to_string() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// Exact Gaussian integer; used for fraction-free elimination.
struct GaussInt {
  mpz_class re{0};
  mpz_class im{0};

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  friend GaussInt operator+(const GaussInt& a, const GaussInt& b) { return {a.re + b.re, a.im + b.im}; }
  friend GaussInt operator-(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }
  friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussInt operator-(const GaussInt& a) { return {-a.re, -a.im}; }
};

/// a / b where the quotient is known to be a Gaussian integer.
GaussInt exact_quotient(const GaussInt& a, const GaussInt& b);

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
  static constexpr Mode mode = Mode::Floating;
  static bool is_zero(const Complex& v) { return v == Complex(0.0, 0.0); }
  static double magnitude(const Complex& v) { return std::abs(v); }
  static Complex to_complex(const Complex& v) { return v; }
  static Complex from_int(long v) { return Complex(static_cast<double>(v), 0.0); }
};

template <>
struct ScalarTraits<QComplex> {
  static constexpr Mode mode = Mode::Exact;
  static bool is_zero(const QComplex& v) { return v.is_zero(); }
  static double magnitude(const QComplex& v) { return std::abs(v.to_complex()); }
  static Complex to_complex(const QComplex& v) { return v.to_complex(); }
  static QComplex from_int(long v) { return QComplex(v); }
};

template <class T>
inline constexpr bool is_exact_v = ScalarTraits<T>::mode == Mode::Exact;

/// Best rational approximation with denominator at most `max_den` (continued fractions).
mpq_class rationalize(double v, long max_den);

/// Rationalize both parts; empty result if either part is farther than `tol` from its approximation.
bool rationalize(const Complex& v, long max_den, double tol, QComplex& out);

/// Decimal string with 17 significant digits; parses back to the same double.
std::string format_double(double v);

}  // namespace clp
