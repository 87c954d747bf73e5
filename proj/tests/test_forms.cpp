#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "clp/forms.hpp"
#include "clp/rng.hpp"

using namespace clp;

namespace {

ExactForm P(const char* s) { return parse_form(s); }

Form random_form(int d, Rng& rng) {
  Form f(d);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = rng.complex_gaussian();
  return f;
}

ProjPoint random_point(Rng& rng) {
  return ProjPoint(rng.complex_gaussian(), rng.complex_gaussian(), rng.complex_gaussian());
}

}  // namespace

TEST_CASE("monomial index is a bijection onto graded-lex positions") {
  for (int d = 0; d <= 7; ++d) {
    std::vector<int> seen(monomial_count(d), 0);
    for (int a = d; a >= 0; --a)
      for (int b = d - a; b >= 0; --b) {
        const int idx = monomial_index(d, a, b);
        REQUIRE(idx >= 0);
        REQUIRE(idx < monomial_count(d));
        ++seen[idx];
        const Exponents e = monomial_at(d, idx);
        CHECK(e.a == a);
        CHECK(e.b == b);
        CHECK(e.c == d - a - b);
      }
    for (int v : seen) CHECK(v == 1);
  }
  // x^d first, z^d last.
  CHECK(monomial_index(3, 3, 0) == 0);
  CHECK(monomial_index(3, 0, 0) == monomial_count(3) - 1);
}

TEST_CASE("parse difference of cubes") {
  const ExactForm f = P("x^3 - y^3");
  CHECK(f.degree() == 3);
  CHECK(f.coeff(3, 0, 0) == QComplex(1));
  CHECK(f.coeff(0, 3, 0) == QComplex(-1));
  int nonzero = 0;
  for (const auto& c : f.coeffs()) nonzero += c.is_zero() ? 0 : 1;
  CHECK(nonzero == 2);
}

TEST_CASE("parse zero and term collection") {
  const ExactForm z = P("0");
  CHECK(z.degree() == 0);
  CHECK(z.is_zero());

  const ExactForm q = P("x^2 + y*z - y^2");
  CHECK(q.degree() == 2);
  int nonzero = 0;
  for (const auto& c : q.coeffs()) nonzero += c.is_zero() ? 0 : 1;
  CHECK(nonzero == 3);
  CHECK(q.coeff(0, 1, 1) == QComplex(1));

  // Like terms cancel and merge.
  const ExactForm m = P("x*y + y x - 2 x y + 3/2 z^2 + 1/2*z^2");
  CHECK(m.coeff(1, 1, 0).is_zero());
  CHECK(m.coeff(0, 0, 2) == QComplex(2));
}

TEST_CASE("parse imaginary coefficients, products and powers") {
  const ExactForm f = P("2i x^2 - i*y^2 + (x - y)(x + y)");
  CHECK(f.coeff(2, 0, 0) == QComplex(mpq_class(1), mpq_class(2)));
  CHECK(f.coeff(0, 2, 0) == QComplex(mpq_class(-1), mpq_class(-1)));
  const ExactForm g = P("(x-2*y)(x^2+y^2-z^2)");
  CHECK(g.degree() == 3);
  CHECK(g.coeff(1, 0, 2) == QComplex(-1));
  CHECK(g.coeff(0, 1, 2) == QComplex(2));
  CHECK(P("(x+y)^3").coeff(2, 1, 0) == QComplex(3));
}

TEST_CASE("parse errors") {
  auto code_of = [](const char* s) {
    try {
      (void)parse_form(s);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::Io;
  };
  CHECK(code_of("x^2 + y") == Errc::NotHomogeneous);
  CHECK(code_of("x^2 +") == Errc::ParseError);
  CHECK(code_of("x ** y") == Errc::ParseError);
  CHECK(code_of("w") == Errc::ParseError);
  CHECK(code_of("1/0 x") == Errc::ParseError);
  CHECK(code_of("(x + y") == Errc::ParseError);
  CHECK_THROWS_AS(parse_form("x^2", 3), Error);
}

TEST_CASE("format_form round-trips through the parser") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = static_cast<int>(rng.uniform_int(0, 5));
    ExactForm f(d);
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (rng.uniform() < 0.4) continue;
      const mpq_class re(rng.uniform_int(-9, 9), rng.uniform_int(1, 5));
      const mpq_class im(rng.uniform() < 0.5 ? 0 : rng.uniform_int(-9, 9), rng.uniform_int(1, 5));
      f[i] = QComplex(mpq_class(re), mpq_class(im));
    }
    const std::string text = format_form(f);
    const ExactForm back = parse_form(text, f.is_zero() ? std::optional<int>(d) : std::nullopt);
    CHECK_MESSAGE(back == f, text);
  }
}

TEST_CASE("evaluate examples") {
  CHECK(evaluate(P("x^3 - y^3"), ProjPoint(1.0, 1.0, 0.0)) == Complex(0));
  CHECK(std::abs(evaluate(P("x*y*z"), ProjPoint(1.0, 1.0, 1.0)) - 1.0) < 1e-15);
  CHECK(std::abs(evaluate(P("x^2 + y^2 - z^2"), ProjPoint(0.0, 0.0, 1.0)) + 1.0) < 1e-15);
  const std::array<QComplex, 3> pt{QComplex(2), QComplex(3), QComplex(-1)};
  CHECK(evaluate(P("x*y*z + z^3"), pt) == QComplex(-7));
}

TEST_CASE("homogeneity of evaluation") {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = static_cast<int>(rng.uniform_int(1, 6));
    const Form f = random_form(d, rng);
    const ProjPoint p = random_point(rng);
    const Complex t = rng.complex_gaussian();
    std::array<Complex, 3> tp;
    for (int k = 0; k < 3; ++k) tp[k] = t * p[k];
    const Complex lhs = evaluate(f, tp);
    const Complex rhs = std::pow(t, d) * evaluate(f, p.coords());
    CHECK(std::abs(lhs - rhs) <= 1e-8 * coeff_norm(f) * std::pow(std::abs(t), d) * 10);
  }
  // Exact mode: equality on the nose.
  const ExactForm e = P("3 x^2 y - i y z^2 + 1/7 z^3");
  const std::array<QComplex, 3> p{QComplex(2), QComplex::i(), QComplex(mpq_class(1, 3))};
  const QComplex t(mpq_class(5, 2), mpq_class(-1));
  std::array<QComplex, 3> q;
  for (int k = 0; k < 3; ++k) q[k] = t * p[k];
  CHECK(evaluate(e, q) == t * t * t * evaluate(e, p));
}

TEST_CASE("partials examples and Euler identity") {
  const auto px = partials(P("x^3"));
  CHECK(px[0] == P("3x^2"));
  CHECK(px[1].is_zero());
  CHECK(px[2].is_zero());
  const auto pxyz = partials(P("x*y*z"));
  CHECK(pxyz[0] == P("y*z"));
  CHECK(pxyz[1] == P("x*z"));
  CHECK(pxyz[2] == P("x*y"));

  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = static_cast<int>(rng.uniform_int(1, 6));
    ExactForm f(d);
    for (std::size_t i = 0; i < f.size(); ++i)
      f[i] = QComplex(mpq_class(rng.uniform_int(-5, 5)), mpq_class(rng.uniform_int(-5, 5)));
    const auto g = partials(f);
    const ExactForm euler = ExactForm::variable(Var::X) * g[0] + ExactForm::variable(Var::Y) * g[1] +
                            ExactForm::variable(Var::Z) * g[2];
    CHECK(euler == f * QComplex(d));
  }
}

TEST_CASE("least squares division") {
  const Form c2 = to_floating(P("(x-y)(x^2-x*y+y^2-z^2)"));
  const auto r = least_squares_divide(c2, to_floating(P("x-y")));
  CHECK(r.residual < 1e-12);
  CHECK(projective_form_distance(r.quotient, to_floating(P("x^2-x*y+y^2-z^2"))) < 1e-12);

  // x^3+y^3+z^3 is not divisible by x-y: on the line x=y it takes the value 2 at [1:1:0].
  CHECK(evaluate(P("x^3+y^3+z^3"), std::array<QComplex, 3>{QComplex(1), QComplex(1), QComplex(0)}) == QComplex(2));
  CHECK(least_squares_divide(to_floating(P("x^3+y^3+z^3")), to_floating(P("x-y"))).residual > 1e-3);

  const auto sq = least_squares_divide(to_floating(P("x^2")), to_floating(P("x")));
  CHECK(sq.residual < 1e-14);
  CHECK(projective_form_distance(sq.quotient, to_floating(P("x"))) < 1e-14);

  CHECK_THROWS_AS(least_squares_divide(to_floating(P("x")), to_floating(P("x^2"))), Error);
}

TEST_CASE("least squares division recovers random quotients") {
  Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const int dg = static_cast<int>(rng.uniform_int(1, 3));
    const int dq = static_cast<int>(rng.uniform_int(0, 6 - dg));
    const Form g = random_form(dg, rng), q = random_form(dq, rng);
    const auto r = least_squares_divide(g * q, g);
    CHECK(r.residual <= 1e-7);
    CHECK(projective_form_distance(r.quotient, q) <= 1e-7);
  }
}

TEST_CASE("exact division") {
  const auto q = exact_divide(P("(x-y)(x^2-x*y+y^2-z^2)"), P("x-y"));
  REQUIRE(q.has_value());
  CHECK(*q == P("x^2-x*y+y^2-z^2"));
  CHECK_FALSE(exact_divide(P("x^3+y^3+z^3"), P("x-y")).has_value());
}

TEST_CASE("restriction to a line") {
  const ExactForm x = P("x");
  CHECK(restrict_to_line(to_floating(x), ProjPoint(0.0, 1.0, 0.0), ProjPoint(0.0, 0.0, 1.0)).is_zero());

  // P = [1:0:1] lies on the conic: the s^2 coefficient (the value at P) vanishes.
  const Binary b = restrict_to_line(to_floating(P("x^2+y^2-z^2")), ProjPoint(1.0, 0.0, 1.0), ProjPoint(0.0, 1.0, 0.0));
  CHECK(std::abs(b[2]) < 1e-15);
  CHECK(!b.is_zero());

  // xyz on s[1:0:0] + t[0:1:1] expands to s t^2.
  const Binary c = restrict_to_line(to_floating(P("x*y*z")), ProjPoint(1.0, 0.0, 0.0), ProjPoint(0.0, 1.0, 1.0));
  CHECK(std::abs(c[1] - 1.0) < 1e-15);
  CHECK(std::abs(c[0]) + std::abs(c[2]) + std::abs(c[3]) < 1e-15);

  CHECK_THROWS_AS(restrict_to_line(to_floating(x), ProjPoint(1.0, 2.0, 3.0), ProjPoint(2.0, 4.0, 6.0)), Error);

  // Agreement with direct evaluation.
  Rng rng(23);
  const Form f = random_form(4, rng);
  const ProjPoint p = random_point(rng), q = random_point(rng);
  const Binary r = restrict_to_line(f, p, q);
  for (int k = 0; k < 5; ++k) {
    const Complex s = rng.complex_gaussian(), t = rng.complex_gaussian();
    std::array<Complex, 3> v;
    for (int i = 0; i < 3; ++i) v[i] = s * p[i] + t * q[i];
    CHECK(std::abs(r(s, t) - evaluate(f, v)) < 1e-10 * (1 + std::abs(evaluate(f, v))));
  }
}

TEST_CASE("resultant of two planes") {
  const auto e = resultant_eliminate(P("z - x"), P("z - y"), Var::Z);
  CHECK(e.eliminant.degree() == 1);
  CHECK_FALSE(e.degenerate);
  // Proportional to x - y: s-coefficient and t-coefficient are opposite.
  CHECK(e.eliminant[1] == -e.eliminant[0]);
  CHECK(!e.eliminant[0].is_zero());

  const auto ef = resultant_eliminate(to_floating(P("z - x")), to_floating(P("z - y")), Var::Z);
  CHECK(std::abs(ef.eliminant[1] + ef.eliminant[0]) < 1e-14);
}

TEST_CASE("Fermat eliminant is the cube of the shadow cubic") {
  const auto e = resultant_eliminate(P("x^3-y^3"), P("y^3-z^3"), Var::Z);
  REQUIRE(e.eliminant.degree() == 9);
  // Oracle: (s^3 - t^3)^3 built by repeated binary multiplication.
  const ExactBinary cube(std::vector<QComplex>{QComplex(-1), QComplex(0), QComplex(0), QComplex(1)});
  const ExactBinary oracle = cube * cube * cube;
  // Compare up to scalar.
  const QComplex ratio = e.eliminant[9] / oracle[9];
  for (int k = 0; k <= 9; ++k) CHECK(e.eliminant[k] == ratio * oracle[k]);

  const auto ef = resultant_eliminate(to_floating(P("x^3-y^3")), to_floating(P("y^3-z^3")), Var::Z);
  const Complex fr = ef.eliminant[9] / oracle[9].to_complex();
  for (int k = 0; k <= 9; ++k) CHECK(std::abs(ef.eliminant[k] - fr * oracle[k].to_complex()) < 1e-10 * std::abs(fr));
}

TEST_CASE("resultant of equal forms is flagged") {
  const auto e = resultant_eliminate(P("x^2+y*z"), P("x^2+y*z"), Var::Z);
  CHECK(e.eliminant.is_zero());
  CHECK(e.degenerate);
  const auto ef = resultant_eliminate(to_floating(P("x^2+y*z")), to_floating(P("x^2+y*z")), Var::Z);
  CHECK(ef.degenerate);
}

TEST_CASE("resultant degree law with nonzero leading coefficients") {
  Rng rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const int df = static_cast<int>(rng.uniform_int(1, 4)), dg = static_cast<int>(rng.uniform_int(1, 4));
    ExactForm f(df), g(dg);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = QComplex(rng.uniform_int(-3, 3) + (i == f.size() - 1 ? 7 : 0));
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = QComplex(rng.uniform_int(-3, 3) + (i == g.size() - 1 ? 7 : 0));
    const auto e = resultant_eliminate(f, g, Var::Z);
    CHECK(e.eliminant.degree() == df * dg);
    CHECK_FALSE(e.degenerate);
    // The floating path agrees up to scalar.
    const auto ef = resultant_eliminate(to_floating(f), to_floating(g), Var::Z);
    const Binary ex = to_floating(e.eliminant);
    const Complex ratio = ex[df * dg] / ef.eliminant[df * dg];
    for (int k = 0; k <= df * dg; ++k) CHECK(std::abs(ex[k] - ratio * ef.eliminant[k]) <= 1e-7 * coeff_norm(ex));
  }
}

TEST_CASE("transforms: identity, determinism, composition, inverse") {
  const ExactForm f = P("x^2 + y^2 + z^2 - 3 x y");
  CHECK(clp::apply(ExactTransform::identity(), f) == f);

  const Transform t1 = random_transform(42), t2 = random_transform(42);
  CHECK(t1.matrix() == t2.matrix());
  CHECK(std::abs(t1.determinant()) > 0);

  const ExactTransform a = random_integer_transform(1), b = random_integer_transform(2);
  CHECK(clp::apply(compose(a, b), f) == clp::apply(a, clp::apply(b, f)));
  CHECK(clp::apply(a, clp::apply(a.inverse(), f)) == f);

  // Oracle for apply: direct substitution at a point.
  const std::array<QComplex, 3> v{QComplex(1), QComplex(-2), QComplex(mpq_class(1, 2))};
  CHECK(evaluate(clp::apply(a, f), v) == evaluate(f, a.map(v)));

  const Form ff = to_floating(f);
  const Form back = clp::apply(t1, clp::apply(t1.inverse(), ff));
  CHECK(projective_form_distance(back, ff) < 1e-12);
}

TEST_CASE("projective points") {
  const ProjPoint p(2.0, 4.0, -1.0);
  CHECK(p.chart() == 1);
  CHECK(p[1] == Complex(1.0));
  const ProjPoint q(p.coords());
  CHECK(q.coords() == p.coords());
  CHECK(chordal_distance(p, ProjPoint(-4.0, -8.0, 2.0)) < 1e-15);
  CHECK(chordal_distance(p, ProjPoint(1.0, 0.0, 0.0)) > 0.1);
  CHECK(chordal_distance(ProjPoint(1.0, 0.0, 0.0), ProjPoint(0.0, 1.0, 0.0)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(ProjPoint(0.0, 0.0, 0.0), Error);
}

TEST_CASE("rationalization") {
  CHECK(rationalize(0.5, 1000000) == mpq_class(1, 2));
  CHECK(rationalize(-1.0 / 3.0, 1000000) == mpq_class(-1, 3));
  QComplex out;
  CHECK(rationalize(Complex(0.25, -2.0), 1000000, 1e-12, out));
  CHECK(out == QComplex(mpq_class(1, 4), mpq_class(-2)));
  CHECK_FALSE(rationalize(Complex(std::sqrt(2.0), 0), 1000, 1e-12, out));
}
