#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clp/error.hpp"
#include "clp/scalar.hpp"

namespace clp {

enum class Var { X = 0, Y = 1, Z = 2 };

/// Number of monomials x^a y^b z^c with a+b+c = d.
constexpr int monomial_count(int d) { return (d + 1) * (d + 2) / 2; }

/// Position of x^a y^b z^(d-a-b) in graded-lex order (x > y > z).
constexpr int monomial_index(int d, int a, int b) {
  return (d - a) * (d - a + 1) / 2 + (d - a - b);
}

struct Exponents {
  int a, b, c;
};

/// Inverse of monomial_index.
Exponents monomial_at(int d, int index);

/// Homogeneous form in x, y, z of fixed degree with dense graded-lex coefficients.
template <class T>
class TernaryForm {
 public:
  using scalar_type = T;

  TernaryForm() : TernaryForm(0) {}
  explicit TernaryForm(int degree) : degree_(degree), coeffs_(monomial_count(degree), T(0)) {
    if (degree < 0) throw Error(Errc::DegreeMismatch, "negative degree");
  }
  TernaryForm(int degree, std::vector<T> coeffs) : degree_(degree), coeffs_(std::move(coeffs)) {
    if (degree < 0 || coeffs_.size() != static_cast<std::size_t>(monomial_count(degree)))
      throw Error(Errc::DegreeMismatch, "coefficient vector does not match degree");
  }

  static TernaryForm variable(Var v) {
    TernaryForm f(1);
    f.coeffs_[static_cast<int>(v)] = T(1);
    return f;
  }
  static TernaryForm constant(T v) { return TernaryForm(0, {std::move(v)}); }

  int degree() const { return degree_; }
  std::size_t size() const { return coeffs_.size(); }
  std::span<const T> coeffs() const { return coeffs_; }
  std::span<T> coeffs() { return coeffs_; }

  const T& operator[](std::size_t i) const { return coeffs_[i]; }
  T& operator[](std::size_t i) { return coeffs_[i]; }
  const T& coeff(int a, int b, int c) const { return coeffs_[index(a, b, c)]; }
  T& coeff(int a, int b, int c) { return coeffs_[index(a, b, c)]; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!ScalarTraits<T>::is_zero(c)) return false;
    return true;
  }

  TernaryForm& operator+=(const TernaryForm& o) { return accumulate(o, false); }
  TernaryForm& operator-=(const TernaryForm& o) { return accumulate(o, true); }
  TernaryForm& operator*=(const T& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

  friend TernaryForm operator+(TernaryForm a, const TernaryForm& b) { return a += b; }
  friend TernaryForm operator-(TernaryForm a, const TernaryForm& b) { return a -= b; }
  friend TernaryForm operator-(TernaryForm a) { return a *= T(-1); }
  friend TernaryForm operator*(TernaryForm a, const T& s) { return a *= s; }
  friend TernaryForm operator*(const T& s, TernaryForm a) { return a *= s; }
  friend TernaryForm operator*(const TernaryForm& a, const TernaryForm& b) { return multiply(a, b); }
  friend bool operator==(const TernaryForm& a, const TernaryForm& b) {
    return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
  }

 private:
  int index(int a, int b, int c) const {
    if (a < 0 || b < 0 || c < 0 || a + b + c != degree_)
      throw Error(Errc::DegreeMismatch, "monomial does not match form degree");
    return monomial_index(degree_, a, b);
  }

  TernaryForm& accumulate(const TernaryForm& o, bool subtract) {
    if (o.degree_ != degree_) {
      // A zero form is the identity for addition regardless of its nominal degree.
      if (o.is_zero()) return *this;
      if (is_zero()) {
        *this = subtract ? -o : o;
        return *this;
      }
      throw Error(Errc::DegreeMismatch, "adding forms of different degree");
    }
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (subtract)
        coeffs_[i] -= o.coeffs_[i];
      else
        coeffs_[i] += o.coeffs_[i];
    }
    return *this;
  }

  int degree_;
  std::vector<T> coeffs_;
};

using Form = TernaryForm<Complex>;
using ExactForm = TernaryForm<QComplex>;

template <class T>
TernaryForm<T> multiply(const TernaryForm<T>& f, const TernaryForm<T>& g) {
  const int df = f.degree(), dg = g.degree();
  TernaryForm<T> out(df + dg);
  for (int i = 0; i < static_cast<int>(f.size()); ++i) {
    if (ScalarTraits<T>::is_zero(f[i])) continue;
    const Exponents ei = monomial_at(df, i);
    for (int j = 0; j < static_cast<int>(g.size()); ++j) {
      if (ScalarTraits<T>::is_zero(g[j])) continue;
      const Exponents ej = monomial_at(dg, j);
      out[monomial_index(df + dg, ei.a + ej.a, ei.b + ej.b)] += f[i] * g[j];
    }
  }
  return out;
}

template <class T>
TernaryForm<T> power(const TernaryForm<T>& f, int k) {
  TernaryForm<T> out = TernaryForm<T>::constant(T(1));
  for (int i = 0; i < k; ++i) out = multiply(out, f);
  return out;
}

/// Value of F at the given coordinates (no normalization applied).
template <class T>
T evaluate(const TernaryForm<T>& f, const std::array<T, 3>& p) {
  const int d = f.degree();
  std::vector<T> px(d + 1, T(1)), py(d + 1, T(1)), pz(d + 1, T(1));
  for (int k = 1; k <= d; ++k) {
    px[k] = px[k - 1] * p[0];
    py[k] = py[k - 1] * p[1];
    pz[k] = pz[k - 1] * p[2];
  }
  T acc(0);
  for (int i = 0; i < static_cast<int>(f.size()); ++i) {
    if (ScalarTraits<T>::is_zero(f[i])) continue;
    const Exponents e = monomial_at(d, i);
    acc += f[i] * px[e.a] * py[e.b] * pz[e.c];
  }
  return acc;
}

template <class T>
TernaryForm<T> partial(const TernaryForm<T>& f, Var v) {
  const int d = f.degree();
  if (d == 0) return TernaryForm<T>(0);
  TernaryForm<T> out(d - 1);
  for (int i = 0; i < static_cast<int>(f.size()); ++i) {
    const Exponents e = monomial_at(d, i);
    std::array<int, 3> ex{e.a, e.b, e.c};
    const int k = ex[static_cast<int>(v)];
    if (k == 0) continue;
    ex[static_cast<int>(v)] -= 1;
    out.coeff(ex[0], ex[1], ex[2]) += f[i] * T(static_cast<long>(k));
  }
  return out;
}

template <class T>
std::array<TernaryForm<T>, 3> partials(const TernaryForm<T>& f) {
  return {partial(f, Var::X), partial(f, Var::Y), partial(f, Var::Z)};
}

Form to_floating(const ExactForm& f);
double coeff_norm(const Form& f);
/// Scales F so that its largest-modulus coefficient is exactly 1.
Form normalized(const Form& f);
/// Scales an exact form so that its first nonzero coefficient (graded-lex) is 1.
ExactForm normalized(const ExactForm& f);
/// Clears denominators and content; result is an integer multiple of F (up to a unit).
ExactForm primitive_part(const ExactForm& f);

/// Relative distance between forms compared up to scalar.
double projective_form_distance(const Form& f, const Form& g);

struct DivisionResult {
  Form quotient;
  double residual;  // min ||F - G Q|| / ||F||
};

/// Least-squares quotient of F by G in coefficient space.
DivisionResult least_squares_divide(const Form& f, const Form& g);

/// Exact quotient when G divides F, nullopt otherwise.
std::optional<ExactForm> exact_divide(const ExactForm& f, const ExactForm& g);

// ---------------------------------------------------------------------------

/// Binary form; coefficient k multiplies s^k t^(deg-k).
template <class T>
class BinaryForm {
 public:
  BinaryForm() : BinaryForm(0) {}
  explicit BinaryForm(int degree) : coeffs_(degree + 1, T(0)) {}
  explicit BinaryForm(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.assign(1, T(0));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const T> coeffs() const { return coeffs_; }
  std::span<T> coeffs() { return coeffs_; }
  const T& operator[](std::size_t k) const { return coeffs_[k]; }
  T& operator[](std::size_t k) { return coeffs_[k]; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!ScalarTraits<T>::is_zero(c)) return false;
    return true;
  }

  T operator()(const T& s, const T& t) const {
    // Horner in s with t-powers folded in.
    const int n = degree();
    T acc(0);
    std::vector<T> tpow(n + 1, T(1));
    for (int k = 1; k <= n; ++k) tpow[k] = tpow[k - 1] * t;
    T sp(1);
    for (int k = 0; k <= n; ++k) {
      acc += coeffs_[k] * sp * tpow[n - k];
      sp *= s;
    }
    return acc;
  }

  friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
    BinaryForm out(a.degree() + b.degree());
    for (int i = 0; i <= a.degree(); ++i)
      for (int j = 0; j <= b.degree(); ++j) out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return out;
  }
  friend bool operator==(const BinaryForm& a, const BinaryForm& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<T> coeffs_;
};

using Binary = BinaryForm<Complex>;
using ExactBinary = BinaryForm<QComplex>;

Binary to_floating(const ExactBinary& b);
double coeff_norm(const Binary& b);

// ---------------------------------------------------------------------------

/// Point of CP^2, stored with its largest-modulus coordinate equal to 1.
class ProjPoint {
 public:
  ProjPoint() : ProjPoint(Complex(0), Complex(0), Complex(1)) {}
  ProjPoint(Complex x, Complex y, Complex z) : ProjPoint(std::array<Complex, 3>{x, y, z}) {}
  explicit ProjPoint(const std::array<Complex, 3>& c);

  const std::array<Complex, 3>& coords() const { return c_; }
  const Complex& operator[](int i) const { return c_[i]; }
  /// Index of the coordinate normalized to 1.
  int chart() const;

 private:
  std::array<Complex, 3> c_;
};

/// Fubini-Study chordal distance in [0, 1].
double chordal_distance(const ProjPoint& p, const ProjPoint& q);
double chordal_distance(const std::array<Complex, 2>& p, const std::array<Complex, 2>& q);

Complex evaluate(const Form& f, const ProjPoint& p);
Complex evaluate(const ExactForm& f, const ProjPoint& p);

/// |F(P)| / (||F|| ||P||^d), the scale-free residual of F at P.
double relative_value(const Form& f, const ProjPoint& p);

// ---------------------------------------------------------------------------

template <class T>
BinaryForm<T> restrict_to_line(const TernaryForm<T>& f, const std::array<T, 3>& p,
                               const std::array<T, 3>& q) {
  // coordinate i along the line is s*p_i + t*q_i.
  std::array<BinaryForm<T>, 3> lin;
  for (int i = 0; i < 3; ++i) lin[i] = BinaryForm<T>(std::vector<T>{q[i], p[i]});
  const int d = f.degree();
  std::array<std::vector<BinaryForm<T>>, 3> pw;
  for (int i = 0; i < 3; ++i) {
    pw[i].push_back(BinaryForm<T>(std::vector<T>{T(1)}));
    for (int k = 1; k <= d; ++k) pw[i].push_back(pw[i].back() * lin[i]);
  }
  BinaryForm<T> out(d);
  for (int i = 0; i < static_cast<int>(f.size()); ++i) {
    if (ScalarTraits<T>::is_zero(f[i])) continue;
    const Exponents e = monomial_at(d, i);
    const BinaryForm<T> term = pw[0][e.a] * pw[1][e.b] * pw[2][e.c];
    for (int k = 0; k <= d; ++k) out[k] += f[i] * term[k];
  }
  return out;
}

/// Restriction of F to the line PQ as a form in (s, t), point s*P + t*Q.
Binary restrict_to_line(const Form& f, const ProjPoint& p, const ProjPoint& q);

template <class T>
struct Elimination {
  BinaryForm<T> eliminant;
  /// Set when a leading coefficient in the eliminated variable vanishes or
  /// the eliminant is identically zero.
  bool degenerate = false;
};

/// Sylvester resultant of F and G in `var`; the result is a form in the two
/// remaining variables taken in order (x, y, z minus var) as (s, t).
Elimination<Complex> resultant_eliminate(const Form& f, const Form& g, Var var);
Elimination<QComplex> resultant_eliminate(const ExactForm& f, const ExactForm& g, Var var);

// ---------------------------------------------------------------------------

/// Linear substitution v -> M v.  apply(T, F)(v) = F(M v).
template <class T>
class ProjTransform {
 public:
  using Matrix = std::array<std::array<T, 3>, 3>;

  ProjTransform() : m_{} {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m_[i][j] = T(i == j ? 1 : 0);
  }
  explicit ProjTransform(Matrix m) : m_(std::move(m)) {
    if (ScalarTraits<T>::is_zero(determinant()))
      throw Error(Errc::BadParameter, "singular projective transform");
  }

  static ProjTransform identity() { return ProjTransform(); }

  const Matrix& matrix() const { return m_; }

  T determinant() const {
    return m_[0][0] * (m_[1][1] * m_[2][2] - m_[1][2] * m_[2][1]) -
           m_[0][1] * (m_[1][0] * m_[2][2] - m_[1][2] * m_[2][0]) +
           m_[0][2] * (m_[1][0] * m_[2][1] - m_[1][1] * m_[2][0]);
  }

  std::array<T, 3> map(const std::array<T, 3>& v) const {
    std::array<T, 3> out{T(0), T(0), T(0)};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out[i] += m_[i][j] * v[j];
    return out;
  }

  ProjTransform inverse() const {
    const T det = determinant();
    Matrix inv;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
        inv[i][j] = (m_[r0][c0] * m_[r1][c1] - m_[r0][c1] * m_[r1][c0]) / det;
      }
    return ProjTransform(inv);
  }

 private:
  Matrix m_;
};

using Transform = ProjTransform<Complex>;
using ExactTransform = ProjTransform<QComplex>;

template <class T>
TernaryForm<T> apply(const ProjTransform<T>& tr, const TernaryForm<T>& f) {
  const auto& m = tr.matrix();
  std::array<TernaryForm<T>, 3> lin;
  for (int i = 0; i < 3; ++i) {
    lin[i] = TernaryForm<T>(1);
    for (int j = 0; j < 3; ++j) lin[i][j] = m[i][j];
  }
  const int d = f.degree();
  std::array<std::vector<TernaryForm<T>>, 3> pw;
  for (int i = 0; i < 3; ++i) {
    pw[i].push_back(TernaryForm<T>::constant(T(1)));
    for (int k = 1; k <= d; ++k) pw[i].push_back(multiply(pw[i].back(), lin[i]));
  }
  TernaryForm<T> out(d);
  for (int i = 0; i < static_cast<int>(f.size()); ++i) {
    if (ScalarTraits<T>::is_zero(f[i])) continue;
    const Exponents e = monomial_at(d, i);
    TernaryForm<T> term = multiply(multiply(pw[0][e.a], pw[1][e.b]), pw[2][e.c]);
    term *= f[i];
    out += term;
  }
  return out;
}

/// Transform satisfying apply(compose(t1, t2), F) == apply(t1, apply(t2, F)).
template <class T>
ProjTransform<T> compose(const ProjTransform<T>& t1, const ProjTransform<T>& t2) {
  typename ProjTransform<T>::Matrix m;
  const auto& a = t2.matrix();
  const auto& b = t1.matrix();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      m[i][j] = T(0);
      for (int k = 0; k < 3; ++k) m[i][j] += a[i][k] * b[k][j];
    }
  return ProjTransform<T>(m);
}

Transform to_floating(const ExactTransform& t);
ProjPoint map_point(const Transform& t, const ProjPoint& p);

/// Seeded complex transform with |det| bounded away from zero.
Transform random_transform(std::uint64_t seed);
/// Seeded transform with small integer entries (exact), det != 0.
ExactTransform random_integer_transform(std::uint64_t seed, int bound = 32);

// ---------------------------------------------------------------------------

/// Parses the expression grammar (monomials in x, y, z with rational and
/// imaginary-unit coefficients; parenthesized factors multiply).
ExactForm parse_form(std::string_view text, std::optional<int> degree_hint = std::nullopt);

/// Inverse of parse_form: "3/2*x^2*y - i*z^3".
std::string format_form(const ExactForm& f);

}  // namespace clp
