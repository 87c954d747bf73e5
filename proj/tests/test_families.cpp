#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "clp/families.hpp"

using namespace clp;

namespace {

ExactForm P(const char* s) { return parse_form(s); }

QComplex Q(const char* s) { return P(s).coeff(0, 0, 0); }

/// Exact product of the expected factors against the member at the expected parameter.
bool factors_multiply_out(const FamilySpec& s, const ExpectedMember& e) {
  ExactForm prod = ExactForm::constant(QComplex(1));
  for (const auto& f : e.factors) prod = prod * f;
  const ExactForm h = normalized(s.f * (*e.exact_param)[0] + s.g * (*e.exact_param)[1]);
  const auto q = exact_divide(h, prod);
  return q && q->degree() == 0;
}

}  // namespace

TEST_CASE("Fermat table") {
  for (int d = 3; d <= 6; ++d) {
    const FamilySpec s = fermat_family(d);
    CHECK(s.expected.size() == 3);
    CHECK(s.p == 3);
    for (const auto& e : s.expected) {
      CHECK(e.lines == d);
      CHECK(e.concurrent);
      CHECK(e.euler == d + 1);
      REQUIRE(e.exact_param);
      // the member is a binary form of degree d, hence d concurrent lines
      const ExactForm h = s.f * (*e.exact_param)[0] + s.g * (*e.exact_param)[1];
      int vars = 0;
      for (int v = 0; v < 3; ++v) vars += partial(h, static_cast<Var>(v)).is_zero() ? 0 : 1;
      CHECK(vars == 2);
    }
  }
  CHECK_THROWS_AS(fermat_family(2), Error);
}

TEST_CASE("P_a factors multiply out to the members") {
  for (const char* a : {"2", "3", "-1", "1/2", "5/7", "-3"}) {
    CAPTURE(a);
    const FamilySpec s = pa_family(Q(a));
    REQUIRE(s.expected.size() == 4);
    for (const auto& e : s.expected) {
      CHECK(e.lines == 1);
      CHECK(e.conics == 1);
      CHECK(factors_multiply_out(s, e));
    }
  }
}

TEST_CASE("P_a parameters and general position flags") {
  const FamilySpec s2 = pa_family(Q("2"));
  CHECK(chordal_distance(s2.expected[3].param, normalize_pair({1.0, -2.0})) < 1e-15);
  CHECK(*s2.expected[2].general_position == false);
  CHECK(s2.expected[2].euler == 3);
  const FamilySpec sh = pa_family(Q("1/2"));
  CHECK(*sh.expected[3].general_position == false);
  const FamilySpec s3 = pa_family(Q("3"));
  for (const auto& e : s3.expected) CHECK(*e.general_position);
  // C_3 of P_2 is y(-xy - y^2 + z^2)
  CHECK(projective_form_distance(to_floating(s2.expected[2].factors[1]), to_floating(P("-x*y - y^2 + z^2"))) < 1e-15);
  CHECK_THROWS_AS(pa_family(Q("0")), Error);
  CHECK_THROWS_AS(pa_family(Q("1")), Error);
}

TEST_CASE("Hesse table") {
  const FamilySpec s = hesse_family();
  CHECK(s.expected.size() == 4);
  CHECK(s.p == 0);
  const auto q = exact_divide(s.f - QComplex(3) * s.g, P("x + y + z"));
  REQUIRE(q);
  CHECK(exact_divide(*q, P("x^2 + y^2 + z^2 - x*y - y*z - z*x")));
}

TEST_CASE("generated pencils are transverse") {
  for (const auto& s : corpus("default")) {
    CAPTURE(s.name);
    const BaseLocus b = base_locus(make_pencil(s.f, s.g, 1));
    CHECK(b.transverse);
    CHECK(b.count == s.f.degree() * s.f.degree());
  }
}

TEST_CASE("corpus names") {
  CHECK(corpus("default").size() == 8);
  CHECK(corpus("empty").empty());
  CHECK(corpus("fermat:4").front().parameters == "d=4");
  CHECK(corpus("pa:1/2").front().name == "pa");
  CHECK(corpus("hesse").front().name == "hesse");
  CHECK_THROWS_AS(corpus("nothing"), Error);
}

TEST_CASE("expected tables round-trip through analysis") {
  for (const char* name : {"fermat:3", "pa:2", "pa:-1", "hesse"}) {
    CAPTURE(name);
    const FamilySpec s = corpus(name).front();
    const auto r = analyze_pencil(s.f, s.g, 1);
    const auto diff = compare_expected(r, s);
    for (const auto& d : diff) MESSAGE(d);
    CHECK(diff.empty());
    CHECK(check_expected_table(r, s).status == Status::Pass);
  }
}

TEST_CASE("expected table comparison detects a mismatch") {
  const FamilySpec s = pa_family(Q("3"));
  auto r = analyze_pencil(s.f, s.g, 1);
  FamilySpec wrong = s;
  wrong.expected[0].euler = 4;
  CHECK(check_expected_table(r, wrong).status == Status::Fail);
  wrong = s;
  wrong.expected.pop_back();
  CHECK_FALSE(compare_expected(r, wrong).empty());
}
