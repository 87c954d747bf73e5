#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "clp/classify.hpp"
#include "clp/rng.hpp"

using namespace clp;

namespace {

ExactForm P(const char* s) { return parse_form(s); }

Decomposition decompose(const char* text, std::uint64_t seed = 7) {
  const ExactForm h = P(text);
  const auto c = detect_components(to_floating(h), {}, seed, {}, h);
  REQUIRE(std::holds_alternative<Decomposition>(c));
  return std::get<Decomposition>(c);
}

bool has_factor(const Decomposition& dec, const ExactForm& want) {
  const Form w = to_floating(want);
  for (const auto& c : dec.components())
    if (c.degree() == w.degree() && projective_form_distance(c, w) < 1e-8) return true;
  return false;
}

ExactForm random_line(Rng& rng) {
  ExactForm l(1);
  for (int i = 0; i < 3; ++i) l.coeffs()[i] = QComplex(rng.uniform_int(-6, 6));
  if (l.is_zero()) l.coeffs()[0] = QComplex(1);
  return l;
}

}  // namespace

TEST_CASE("three concurrent lines") {
  const auto dec = decompose("x^3 - y^3");
  CHECK(dec.lines.size() == 3);
  CHECK(dec.conics.empty());
  CHECK(dec.q == 0);
  // the cube roots of unity lie outside Q(i)
  CHECK_FALSE(dec.certified);
  REQUIRE(dec.concurrent_point);
  CHECK(chordal_distance(*dec.concurrent_point, ProjPoint(0, 0, 1)) < 1e-9);
  CHECK_FALSE(dec.general_position);
  CHECK(has_factor(dec, P("x - y")));
}

TEST_CASE("rational concurrent lines are certified") {
  const auto dec = decompose("x^3 - x*y^2");
  CHECK(dec.lines.size() == 3);
  CHECK(dec.certified);
  CHECK(dec.concurrent_point);
  for (const char* l : {"x", "x - y", "x + y"}) CHECK(has_factor(dec, P(l)));
}

TEST_CASE("triangle is in general position") {
  const auto dec = decompose("x*y*z");
  CHECK(dec.lines.size() == 3);
  CHECK_FALSE(dec.concurrent_point);
  CHECK(dec.general_position);
  for (const char* l : {"x", "y", "z"}) CHECK(has_factor(dec, P(l)));
}

TEST_CASE("line and conic") {
  const ExactForm l = P("x - 2*y"), c = P("x^2 + y^2 - z^2");
  const auto dec = decompose("(x - 2*y)*(x^2 + y^2 - z^2)");
  CHECK(dec.lines.size() == 1);
  CHECK(dec.conics.size() == 1);
  CHECK(dec.q == 1);
  CHECK(dec.general_position);
  CHECK(has_factor(dec, l));
  CHECK(has_factor(dec, c));
}

TEST_CASE("tangent line breaks general position") {
  // z = 1 is tangent to x^2 + y^2 = z^2 at (0, 1)
  const auto dec = decompose("(y - z)*(x^2 + y^2 - z^2)");
  CHECK(dec.conics.size() == 1);
  CHECK_FALSE(dec.general_position);
}

TEST_CASE("irreducible cubic is not conic-line") {
  const ExactForm h = P("y^2*z - x^3 - x*z^2 - z^3");
  const auto c = detect_components(to_floating(h), {}, 3, {}, h);
  REQUIRE(std::holds_alternative<NotConicLine>(c));
  CHECK(std::get<NotConicLine>(c).remainder_degree == 3);
}

TEST_CASE("line times smooth cubic keeps the line") {
  const ExactForm h = P("(x + y + 3*z)*(y^2*z - x^3 - x*z^2 - z^3)");
  const auto c = detect_components(to_floating(h), {}, 5, {}, h);
  REQUIRE(std::holds_alternative<NotConicLine>(c));
  const auto& n = std::get<NotConicLine>(c);
  CHECK(n.remainder_degree == 3);
  CHECK(n.lines.size() == 1);
}

TEST_CASE("concurrency of lines") {
  std::vector<LineFactor> lines(3);
  lines[0].coeffs = {1.0, 0.0, -1.0};
  lines[1].coeffs = {0.0, 1.0, -1.0};
  lines[2].coeffs = {1.0, -1.0, 0.0};
  const auto pt = concurrency(lines);
  REQUIRE(pt);
  CHECK(chordal_distance(*pt, ProjPoint(1, 1, 1)) < 1e-9);
  lines[2].coeffs = {1.0, 1.0, 1.0};
  CHECK_FALSE(concurrency(lines));
}

TEST_CASE("line through two points contains both") {
  const ProjPoint p(1, 2, 3), q(Complex(0, 1), -1, 2);
  const auto l = line_through(p, q);
  Form f(1);
  for (int i = 0; i < 3; ++i) f.coeffs()[i] = l[i];
  CHECK(relative_value(f, p) < 1e-12);
  CHECK(relative_value(f, q) < 1e-12);
}

TEST_CASE("sampled points lie on the curve") {
  const Form h = to_floating(P("x^3 + y^3 + z^3"));
  const auto pts = sample_curve_points(h, 4, 11);
  CHECK(pts.size() == 12);
  for (const auto& p : pts) CHECK(relative_value(h, p) < 1e-10);
}

TEST_CASE("random products of lines are recovered exactly") {
  Rng rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 3 + trial % 3;
    std::vector<ExactForm> ls;
    ExactForm h = ExactForm::constant(QComplex(1));
    for (int i = 0; i < k; ++i) {
      ls.push_back(random_line(rng));
      h = h * ls.back();
    }
    bool distinct = true;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if (projective_form_distance(to_floating(ls[i]), to_floating(ls[j])) < 1e-9) distinct = false;
    if (!distinct) continue;
    const auto c = detect_components(to_floating(h), {}, static_cast<std::uint64_t>(trial), {}, h);
    REQUIRE(std::holds_alternative<Decomposition>(c));
    const auto& dec = std::get<Decomposition>(c);
    CHECK(static_cast<int>(dec.lines.size()) == k);
    CHECK(dec.certified);
    for (const auto& l : ls) CHECK(has_factor(dec, l));
  }
}
