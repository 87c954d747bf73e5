#include "clp/forms.hpp"

#include <algorithm>
#include <numbers>

#include <Eigen/Dense>

#include "clp/rng.hpp"

namespace clp {

Exponents monomial_at(int d, int index) {
  // Block with x-exponent a starts at (d-a)(d-a+1)/2 and has d-a+1 entries.
  int a = d;
  int start = 0;
  while (index >= start + (d - a + 1)) {
    start += d - a + 1;
    --a;
  }
  const int b = d - a - (index - start);
  return {a, b, d - a - b};
}

Form to_floating(const ExactForm& f) {
  Form out(f.degree());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i].to_complex();
  return out;
}

double coeff_norm(const Form& f) {
  double s = 0;
  for (const auto& c : f.coeffs()) s += std::norm(c);
  return std::sqrt(s);
}

Form normalized(const Form& f) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < f.size(); ++i)
    if (std::abs(f[i]) > std::abs(f[best])) best = i;
  if (std::abs(f[best]) == 0.0) return f;
  const Complex s = f[best];
  Form out = f;
  for (auto& c : out.coeffs()) c /= s;
  out[best] = Complex(1.0, 0.0);
  return out;
}

ExactForm normalized(const ExactForm& f) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f[i].is_zero()) {
      const QComplex s = f[i];
      ExactForm out = f;
      for (auto& c : out.coeffs()) c /= s;
      return out;
    }
  }
  return f;
}

ExactForm primitive_part(const ExactForm& f) {
  mpz_class den = 1;
  for (const auto& c : f.coeffs()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.re().get_den_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.im().get_den_mpz_t());
  }
  mpz_class content = 0;
  std::vector<std::pair<mpz_class, mpz_class>> ints;
  ints.reserve(f.size());
  for (const auto& c : f.coeffs()) {
    mpz_class r = c.re().get_num() * (den / c.re().get_den());
    mpz_class i = c.im().get_num() * (den / c.im().get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), r.get_mpz_t());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), i.get_mpz_t());
    ints.emplace_back(std::move(r), std::move(i));
  }
  if (content == 0) return f;
  ExactForm out(f.degree());
  for (std::size_t k = 0; k < f.size(); ++k)
    out[k] = QComplex(mpq_class(ints[k].first / content), mpq_class(ints[k].second / content));
  return out;
}

double projective_form_distance(const Form& f, const Form& g) {
  if (f.degree() != g.degree()) return 1.0;
  // Optimal scalar c minimizing ||f - c g||, relative to ||f||.
  Complex num(0), den(0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    num += std::conj(g[i]) * f[i];
    den += std::conj(g[i]) * g[i];
  }
  if (std::abs(den) == 0.0) return 1.0;
  const Complex c = num / den;
  double r = 0;
  for (std::size_t i = 0; i < f.size(); ++i) r += std::norm(f[i] - c * g[i]);
  const double nf = coeff_norm(f);
  return nf == 0.0 ? 1.0 : std::sqrt(r) / nf;
}

DivisionResult least_squares_divide(const Form& f, const Form& g) {
  if (g.is_zero()) throw Error(Errc::ZeroForm, "division by the zero form");
  if (g.degree() > f.degree()) throw Error(Errc::DegreeMismatch, "divisor degree exceeds dividend degree");
  const int dq = f.degree() - g.degree();
  const int nq = monomial_count(dq);
  const int nf = monomial_count(f.degree());
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(nf, nq);
  for (int j = 0; j < nq; ++j) {
    const Exponents ej = monomial_at(dq, j);
    for (int i = 0; i < static_cast<int>(g.size()); ++i) {
      const Exponents ei = monomial_at(g.degree(), i);
      a(monomial_index(f.degree(), ei.a + ej.a, ei.b + ej.b), j) += g[i];
    }
  }
  Eigen::VectorXcd b(nf);
  for (int i = 0; i < nf; ++i) b(i) = f[i];
  const Eigen::VectorXcd q = a.colPivHouseholderQr().solve(b);
  Form quotient(dq);
  for (int j = 0; j < nq; ++j) quotient[j] = q(j);
  const double fn = b.norm();
  const double residual = fn == 0.0 ? 0.0 : (b - a * q).norm() / fn;
  return {std::move(quotient), residual};
}

std::optional<ExactForm> exact_divide(const ExactForm& f, const ExactForm& g) {
  if (g.is_zero()) throw Error(Errc::ZeroForm, "division by the zero form");
  if (g.degree() > f.degree()) throw Error(Errc::DegreeMismatch, "divisor degree exceeds dividend degree");
  const int df = f.degree(), dg = g.degree(), dq = df - dg;
  std::size_t lead = 0;
  while (g[lead].is_zero()) ++lead;
  const Exponents gl = monomial_at(dg, static_cast<int>(lead));
  ExactForm r = f;
  ExactForm q(dq);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i].is_zero()) continue;
    const Exponents ri = monomial_at(df, static_cast<int>(i));
    if (ri.a < gl.a || ri.b < gl.b || ri.c < gl.c) return std::nullopt;
    const int qa = ri.a - gl.a, qb = ri.b - gl.b;
    const QComplex t = r[i] / g[lead];
    q[monomial_index(dq, qa, qb)] += t;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (g[k].is_zero()) continue;
      const Exponents gk = monomial_at(dg, static_cast<int>(k));
      r[monomial_index(df, qa + gk.a, qb + gk.b)] -= t * g[k];
    }
  }
  return q;
}

Binary to_floating(const ExactBinary& b) {
  Binary out(b.degree());
  for (int k = 0; k <= b.degree(); ++k) out[k] = b[k].to_complex();
  return out;
}

double coeff_norm(const Binary& b) {
  double s = 0;
  for (const auto& c : b.coeffs()) s += std::norm(c);
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------

ProjPoint::ProjPoint(const std::array<Complex, 3>& c) : c_(c) {
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(c_[i]) > std::abs(c_[best])) best = i;
  if (std::abs(c_[best]) == 0.0) throw Error(Errc::BadParameter, "projective point with all coordinates zero");
  const Complex s = c_[best];
  for (auto& v : c_) v /= s;
  c_[best] = Complex(1.0, 0.0);
}

int ProjPoint::chart() const {
  for (int i = 0; i < 3; ++i)
    if (c_[i] == Complex(1.0, 0.0)) return i;
  return 0;
}

double chordal_distance(const ProjPoint& p, const ProjPoint& q) {
  double wedge = 0, np = 0, nq = 0;
  for (int i = 0; i < 3; ++i) {
    np += std::norm(p[i]);
    nq += std::norm(q[i]);
    for (int j = i + 1; j < 3; ++j) wedge += std::norm(p[i] * q[j] - p[j] * q[i]);
  }
  return std::sqrt(wedge / (np * nq));
}

double chordal_distance(const std::array<Complex, 2>& p, const std::array<Complex, 2>& q) {
  const double np = std::norm(p[0]) + std::norm(p[1]);
  const double nq = std::norm(q[0]) + std::norm(q[1]);
  return std::abs(p[0] * q[1] - p[1] * q[0]) / std::sqrt(np * nq);
}

Complex evaluate(const Form& f, const ProjPoint& p) { return evaluate(f, p.coords()); }

Complex evaluate(const ExactForm& f, const ProjPoint& p) { return evaluate(to_floating(f), p.coords()); }

double relative_value(const Form& f, const ProjPoint& p) {
  const double n = coeff_norm(f);
  if (n == 0.0) return 0.0;
  // Normalized points have max-norm 1.
  return std::abs(evaluate(f, p)) / n;
}

Binary restrict_to_line(const Form& f, const ProjPoint& p, const ProjPoint& q) {
  if (chordal_distance(p, q) < 1e-12) throw Error(Errc::CoincidentPoints, "line through coincident points");
  return restrict_to_line(f, p.coords(), q.coords());
}

// ---------------------------------------------------------------------------

namespace {

/// Coefficients of F as a polynomial in `var`: out[k] is the binary form
/// multiplying var^k, indexed by the exponent of s.
template <class T>
std::vector<std::vector<T>> split_by_variable(const TernaryForm<T>& f, Var var) {
  const int d = f.degree();
  std::vector<std::vector<T>> out(d + 1);
  for (int k = 0; k <= d; ++k) out[k].assign(d - k + 1, T(0));
  for (int i = 0; i < static_cast<int>(f.size()); ++i) {
    const Exponents e = monomial_at(d, i);
    int k = 0, s = 0;
    switch (var) {
      case Var::Z: k = e.c; s = e.a; break;
      case Var::Y: k = e.b; s = e.a; break;
      case Var::X: k = e.a; s = e.b; break;
    }
    out[k][s] += f[i];
  }
  return out;
}

template <class T>
std::vector<std::vector<T>> sylvester(const std::vector<T>& a, const std::vector<T>& b) {
  // a, b hold polynomial coefficients in increasing degree.
  const int n = static_cast<int>(a.size()) - 1;
  const int m = static_cast<int>(b.size()) - 1;
  const int size = n + m;
  std::vector<std::vector<T>> s(size, std::vector<T>(size, T(0)));
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) s[i][i + k] = a[n - k];
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) s[m + i][i + k] = b[m - k];
  return s;
}

GaussInt bareiss_determinant(std::vector<std::vector<GaussInt>> m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return {1, 0};
  bool negate = false;
  GaussInt prev{1, 0};
  for (int k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      int r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return {0, 0};
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        GaussInt t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = exact_quotient(t, prev);
      }
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

/// Monomial coefficients of the polynomial through (nodes[j], values[j]).
std::vector<mpq_class> interpolate(const std::vector<long>& nodes, std::vector<mpq_class> values) {
  const int n = static_cast<int>(nodes.size());
  for (int k = 1; k < n; ++k)
    for (int j = n - 1; j >= k; --j) values[j] = (values[j] - values[j - 1]) / (nodes[j] - nodes[j - k]);
  std::vector<mpq_class> poly{values[n - 1]};
  for (int k = n - 2; k >= 0; --k) {
    // poly <- poly * (s - nodes[k]) + values[k]
    std::vector<mpq_class> next(poly.size() + 1, mpq_class(0));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * nodes[k];
    }
    next[0] += values[k];
    poly = std::move(next);
  }
  return poly;
}

}  // namespace

Elimination<Complex> resultant_eliminate(const Form& f, const Form& g, Var var) {
  if (f.is_zero() || g.is_zero()) throw Error(Errc::ZeroForm, "resultant of the zero form");
  const auto fa = split_by_variable(f, var);
  const auto ga = split_by_variable(g, var);
  const int n = f.degree(), m = g.degree();
  const int deg = n * m;
  Elimination<Complex> out;
  out.eliminant = Binary(deg);
  const double fn = coeff_norm(f), gn = coeff_norm(g);
  out.degenerate = std::abs(fa[n][0]) <= 1e-12 * fn || std::abs(ga[m][0]) <= 1e-12 * gn;

  auto eval_binary = [](const std::vector<Complex>& c, Complex s) {
    Complex acc(0);
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) acc = acc * s + c[k];
    return acc;
  };

  const int npts = deg + 1;
  std::vector<Complex> values(npts);
  double hadamard_max = 0;
  for (int j = 0; j < npts; ++j) {
    const Complex s = std::polar(1.0, 2.0 * std::numbers::pi * j / npts);
    std::vector<Complex> a(n + 1), b(m + 1);
    for (int k = 0; k <= n; ++k) a[k] = eval_binary(fa[k], s);
    for (int k = 0; k <= m; ++k) b[k] = eval_binary(ga[k], s);
    const auto syl = sylvester(a, b);
    const int size = n + m;
    if (size == 0) {
      values[j] = 1.0;
      hadamard_max = 1.0;
      continue;
    }
    Eigen::MatrixXcd mat(size, size);
    double had = 1;
    for (int r = 0; r < size; ++r) {
      double rn = 0;
      for (int c = 0; c < size; ++c) {
        mat(r, c) = syl[r][c];
        rn += std::norm(syl[r][c]);
      }
      had *= std::sqrt(rn);
    }
    hadamard_max = std::max(hadamard_max, had);
    values[j] = mat.partialPivLu().determinant();
  }
  double vmax = 0;
  for (int k = 0; k < npts; ++k) {
    Complex acc(0);
    for (int j = 0; j < npts; ++j) acc += values[j] * std::polar(1.0, -2.0 * std::numbers::pi * j * k / npts);
    out.eliminant[k] = acc / static_cast<double>(npts);
    vmax = std::max(vmax, std::abs(values[k]));
  }
  if (vmax <= 1e-11 * hadamard_max) out.degenerate = true;
  return out;
}

Elimination<QComplex> resultant_eliminate(const ExactForm& f, const ExactForm& g, Var var) {
  if (f.is_zero() || g.is_zero()) throw Error(Errc::ZeroForm, "resultant of the zero form");
  auto to_gauss = [](const ExactForm& h, Var v) {
    const auto parts = split_by_variable(primitive_part(h), v);
    std::vector<std::vector<GaussInt>> out(parts.size());
    for (std::size_t k = 0; k < parts.size(); ++k)
      for (const auto& c : parts[k]) out[k].push_back({c.re().get_num(), c.im().get_num()});
    return out;
  };
  const auto fa = to_gauss(f, var);
  const auto ga = to_gauss(g, var);
  const int n = f.degree(), m = g.degree();
  const int deg = n * m;
  Elimination<QComplex> out;
  out.eliminant = ExactBinary(deg);
  out.degenerate = fa[n][0].is_zero() || ga[m][0].is_zero();

  auto eval_binary = [](const std::vector<GaussInt>& c, long s) {
    GaussInt acc{0, 0};
    const mpz_class sz = s;
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
      acc.re = acc.re * sz + c[k].re;
      acc.im = acc.im * sz + c[k].im;
    }
    return acc;
  };

  const int npts = deg + 1;
  std::vector<long> nodes(npts);
  std::vector<mpq_class> vre(npts), vim(npts);
  for (int j = 0; j < npts; ++j) {
    nodes[j] = (j % 2 == 1) ? (j + 1) / 2 : -(j / 2);
    std::vector<GaussInt> a(n + 1), b(m + 1);
    for (int k = 0; k <= n; ++k) a[k] = eval_binary(fa[k], nodes[j]);
    for (int k = 0; k <= m; ++k) b[k] = eval_binary(ga[k], nodes[j]);
    const GaussInt det = bareiss_determinant(sylvester(a, b));
    vre[j] = det.re;
    vim[j] = det.im;
  }
  const auto cre = interpolate(nodes, std::move(vre));
  const auto cim = interpolate(nodes, std::move(vim));
  for (int k = 0; k <= deg; ++k) out.eliminant[k] = QComplex(cre[k], cim[k]);
  if (out.eliminant.is_zero()) out.degenerate = true;
  return out;
}

// ---------------------------------------------------------------------------

Transform to_floating(const ExactTransform& t) {
  Transform::Matrix m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = t.matrix()[i][j].to_complex();
  return Transform(m);
}

ProjPoint map_point(const Transform& t, const ProjPoint& p) { return ProjPoint(t.map(p.coords())); }

Transform random_transform(std::uint64_t seed) {
  Rng rng(seed);
  for (;;) {
    Transform::Matrix m;
    double row_norm_product = 1;
    for (int i = 0; i < 3; ++i) {
      double rn = 0;
      for (int j = 0; j < 3; ++j) {
        m[i][j] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
        rn += std::norm(m[i][j]);
      }
      row_norm_product *= std::sqrt(rn);
    }
    const Complex det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                        m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                        m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if (std::abs(det) >= 0.2 * row_norm_product) return Transform(m);
  }
}

ExactTransform random_integer_transform(std::uint64_t seed, int bound) {
  Rng rng(seed);
  for (;;) {
    ExactTransform::Matrix m;
    std::array<std::array<long, 3>, 3> v{};
    double row_norm_product = 1;
    for (int i = 0; i < 3; ++i) {
      double rn = 0;
      for (int j = 0; j < 3; ++j) {
        v[i][j] = rng.uniform_int(-bound, bound);
        m[i][j] = QComplex(v[i][j]);
        rn += static_cast<double>(v[i][j] * v[i][j]);
      }
      row_norm_product *= std::sqrt(rn);
    }
    const long det = v[0][0] * (v[1][1] * v[2][2] - v[1][2] * v[2][1]) -
                     v[0][1] * (v[1][0] * v[2][2] - v[1][2] * v[2][0]) +
                     v[0][2] * (v[1][0] * v[2][1] - v[1][1] * v[2][0]);
    if (det != 0 && std::abs(static_cast<double>(det)) >= 0.2 * row_norm_product) return ExactTransform(m);
  }
}

}  // namespace clp
