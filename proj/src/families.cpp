#include "clp/families.hpp"

#include <numbers>

namespace clp {

namespace {

const ExactForm X = ExactForm::variable(Var::X);
const ExactForm Y = ExactForm::variable(Var::Y);
const ExactForm Z = ExactForm::variable(Var::Z);

ExpectedMember exact_member(const QComplex& l, const QComplex& m) {
  ExpectedMember e;
  e.exact_param = ExactPair{l, m};
  e.param = normalize_pair({l.to_complex(), m.to_complex()});
  return e;
}

std::string describe(const ProjPair& p) {
  const ProjPair n = normalize_pair(p);
  return "[" + format_double(n[0].real()) + "," + format_double(n[0].imag()) + " : " + format_double(n[1].real()) +
         "," + format_double(n[1].imag()) + "]";
}

}  // namespace

FamilySpec fermat_family(int d) {
  if (d < 3) throw Error(Errc::BadParameter, "Fermat pencil needs d >= 3");
  FamilySpec s;
  s.name = "fermat";
  s.parameters = "d=" + std::to_string(d);
  s.f = power(X, d) - power(Y, d);
  s.g = power(Y, d) - power(Z, d);
  s.p = 3;
  s.non_special = 0;
  for (const auto& [l, m] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 1}}) {
    ExpectedMember e = exact_member(QComplex(l), QComplex(m));
    e.lines = d;
    e.concurrent = true;
    e.euler = d + 1;
    e.general_position = false;
    s.expected.push_back(std::move(e));
  }
  return s;
}

FamilySpec pa_family(const QComplex& a) {
  if (a.is_zero() || a == QComplex(1)) throw Error(Errc::BadParameter, "P_a needs a not in {0, 1}");
  FamilySpec s;
  s.name = "pa";
  s.parameters = "a=" + a.to_string();
  const QComplex one(1), two(2);
  const ExactForm l1 = X - a * Y, l2 = X - Y;
  const ExactForm q1 = X * X + Y * Y - Z * Z;
  const ExactForm q2 = X * X - X * Y + Y * Y - Z * Z;
  const ExactForm q3 = (two - a) * (X * X) - X * Y + (one - a) * (Y * Y) + (a - one) * (Z * Z);
  const ExactForm q4 = (one - a) * (X * X) + a * (X * Y) + (one - two * a) * (Y * Y) + (a - one) * (Z * Z);
  s.f = l1 * q1;
  s.g = l2 * q2;
  s.p = 0;
  const bool half = a == QComplex(mpq_class(1, 2));
  const bool two_a = a == two;
  const std::vector<std::tuple<ExactPair, ExactForm, ExactForm, bool>> members{
      {{one, QComplex(0)}, l1, q1, true},
      {{QComplex(0), one}, l2, q2, true},
      {{one, -one}, Y, q3, !two_a},
      {{one, -a}, X, q4, !half},
  };
  for (const auto& [param, line, conic, gp] : members) {
    ExpectedMember e = exact_member(param[0], param[1]);
    e.lines = 1;
    e.conics = 1;
    e.euler = gp ? 2 : 3;
    e.general_position = gp;
    e.factors = {line, conic};
    s.expected.push_back(std::move(e));
  }
  return s;
}

FamilySpec hesse_family() {
  FamilySpec s;
  s.name = "hesse";
  s.parameters = "";
  s.f = power(X, 3) + power(Y, 3) + power(Z, 3);
  s.g = X * Y * Z;
  s.p = 0;
  s.non_special = 0;
  // x^3 + y^3 + z^3 + t xyz is a triangle for t = -3 w^k, and xyz itself.
  ExpectedMember tri = exact_member(QComplex(0), QComplex(1));
  tri.factors = {X, Y, Z};
  std::vector<ExpectedMember> members{tri};
  for (int k = 0; k < 3; ++k) {
    ExpectedMember e;
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi * k / 3.0);
    e.param = normalize_pair({Complex(1), -3.0 * w});
    if (k == 0) e.exact_param = ExactPair{QComplex(1), QComplex(-3)};
    members.push_back(std::move(e));
  }
  for (auto& e : members) {
    e.lines = 3;
    e.euler = 3;
    e.general_position = true;
  }
  s.expected = std::move(members);
  return s;
}

Pencil fermat_pencil(int d, std::uint64_t seed) {
  const FamilySpec s = fermat_family(d);
  return make_pencil(s.f, s.g, seed);
}

Pencil pa_pencil(const QComplex& a, std::uint64_t seed) {
  const FamilySpec s = pa_family(a);
  return make_pencil(s.f, s.g, seed);
}

Pencil hesse_pencil(std::uint64_t seed) {
  const FamilySpec s = hesse_family();
  return make_pencil(s.f, s.g, seed);
}

std::vector<std::string> compare_expected(const AnalysisReport& r, const FamilySpec& fam, double param_tol,
                                          double factor_tol) {
  std::vector<std::string> diff;
  if (r.m != static_cast<int>(fam.expected.size()))
    diff.push_back("m=" + std::to_string(r.m) + ", expected " + std::to_string(fam.expected.size()));
  if (r.p != fam.p) diff.push_back("p=" + std::to_string(r.p) + ", expected " + std::to_string(fam.p));
  if (fam.non_special) {
    int n = 0;
    for (const auto& f : r.fibers) n += f.special ? 0 : 1;
    if (n != *fam.non_special)
      diff.push_back(std::to_string(n) + " non-special fibers, expected " + std::to_string(*fam.non_special));
  }
  for (const auto& e : fam.expected) {
    const SingularFiber* hit = nullptr;
    for (const auto& f : r.fibers)
      if (chordal_distance(f.param, e.param) <= param_tol) hit = &f;
    const std::string where = "member " + describe(e.param);
    if (!hit || !is_conic_line_fiber(*hit)) {
      diff.push_back(where + " not found as a conic-line fiber");
      continue;
    }
    const auto& dec = *hit->decomposition;
    if (static_cast<int>(dec.lines.size()) != e.lines || static_cast<int>(dec.conics.size()) != e.conics)
      diff.push_back(where + ": " + std::to_string(dec.lines.size()) + " lines, " + std::to_string(dec.conics.size()) +
                     " conics");
    if (is_concurrent_fiber(*hit, r.degree) != e.concurrent) diff.push_back(where + ": concurrency differs");
    if (hit->euler != e.euler)
      diff.push_back(where + ": e=" + std::to_string(hit->euler) + ", expected " + std::to_string(e.euler));
    if (e.general_position && dec.general_position != *e.general_position)
      diff.push_back(where + ": general position differs");
    const auto comps = dec.components();
    for (const auto& want : e.factors) {
      const Form w = to_floating(want);
      bool found = false;
      for (const auto& c : comps)
        if (c.degree() == w.degree() && projective_form_distance(c, w) <= factor_tol) found = true;
      if (!found) diff.push_back(where + ": factor " + format_form(want) + " not recovered");
    }
  }
  return diff;
}

Verdict check_expected_table(const AnalysisReport& r, const FamilySpec& fam) {
  const auto diff = compare_expected(r, fam);
  std::string det;
  for (const auto& s : diff) det += (det.empty() ? "" : "; ") + s;
  return {"expected-table", diff.empty() ? Status::Pass : Status::Fail,
          diff.empty() ? fam.name + " " + fam.parameters + " matches" : det};
}

std::vector<FamilySpec> corpus(const std::string& name) {
  if (name == "empty") return {};
  if (name == "default") {
    std::vector<FamilySpec> out;
    for (int d = 3; d <= 5; ++d) out.push_back(fermat_family(d));
    for (const char* a : {"2", "3", "-1", "1/2"}) out.push_back(pa_family(parse_form(a).coeff(0, 0, 0)));
    out.push_back(hesse_family());
    return out;
  }
  const auto colon = name.find(':');
  const std::string fam = name.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : name.substr(colon + 1);
  if (fam == "hesse" && arg.empty()) return {hesse_family()};
  if (fam == "fermat" && !arg.empty()) return {fermat_family(std::stoi(arg))};
  if (fam == "pa" && !arg.empty()) {
    const ExactForm a = parse_form(arg);
    if (a.degree() != 0) throw Error(Errc::BadParameter, "pa parameter must be a constant");
    return {pa_family(a.coeff(0, 0, 0))};
  }
  throw Error(Errc::BadParameter, "unknown corpus '" + name + "'");
}

}  // namespace clp
