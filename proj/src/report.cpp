#include "clp/report.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace clp {

using nlohmann::json;

namespace {

json num(double v) { return format_double(v); }

double num_from(const json& j) {
  const std::string s = j.get<std::string>();
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw Error(Errc::ParseError, "bad number '" + s + "'");
  return v;
}

QComplex exact_from(const json& j) {
  const ExactForm f = parse_form(j.get<std::string>());
  if (f.degree() != 0) throw Error(Errc::ParseError, "expected an exact scalar");
  return f.coeff(0, 0, 0);
}

json point_json(const ProjPoint& p) {
  return json::array({complex_json(p[0]), complex_json(p[1]), complex_json(p[2])});
}

ProjPoint point_from(const json& j) {
  return ProjPoint(complex_from_json(j.at(0)), complex_from_json(j.at(1)), complex_from_json(j.at(2)));
}

json pair_json(const ProjPair& p) { return json::array({complex_json(p[0]), complex_json(p[1])}); }

ProjPair pair_from(const json& j) { return {complex_from_json(j.at(0)), complex_from_json(j.at(1))}; }

json tolerances_json(const Tolerances& t) {
  return {{"tau", num(t.tau)},
          {"tau_div", num(t.tau_div)},
          {"rho_c", num(t.rho_c)},
          {"rho_loc", num(t.rho_loc)},
          {"epsilon", num(t.epsilon)}};
}

Tolerances tolerances_from(const json& j) {
  Tolerances t;
  t.tau = num_from(j.at("tau"));
  t.tau_div = num_from(j.at("tau_div"));
  t.rho_c = num_from(j.at("rho_c"));
  t.rho_loc = num_from(j.at("rho_loc"));
  t.epsilon = num_from(j.at("epsilon"));
  return t;
}

json line_json(const LineFactor& l) {
  json j{{"coeffs", json::array({complex_json(l.coeffs[0]), complex_json(l.coeffs[1]), complex_json(l.coeffs[2])})},
         {"multiplicity", l.multiplicity},
         {"exact", nullptr}};
  if (l.exact) j["exact"] = json::array({(*l.exact)[0].to_string(), (*l.exact)[1].to_string(), (*l.exact)[2].to_string()});
  return j;
}

LineFactor line_from(const json& j) {
  LineFactor l;
  for (int k = 0; k < 3; ++k) l.coeffs[k] = complex_from_json(j.at("coeffs").at(k));
  l.multiplicity = j.at("multiplicity").get<int>();
  if (!j.at("exact").is_null()) {
    std::array<QComplex, 3> e;
    for (int k = 0; k < 3; ++k) e[k] = exact_from(j.at("exact").at(k));
    l.exact = e;
  }
  return l;
}

json conic_json(const ConicFactor& c) {
  json sym = json::array();
  for (const auto& row : c.sym) sym.push_back(json::array({complex_json(row[0]), complex_json(row[1]), complex_json(row[2])}));
  json j{{"sym", sym}, {"multiplicity", c.multiplicity}, {"irreducible", c.irreducible}, {"exact", nullptr}};
  if (c.exact) j["exact"] = format_form(*c.exact);
  return j;
}

ConicFactor conic_from(const json& j) {
  ConicFactor c;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) c.sym[a][b] = complex_from_json(j.at("sym").at(a).at(b));
  c.multiplicity = j.at("multiplicity").get<int>();
  c.irreducible = j.at("irreducible").get<bool>();
  if (!j.at("exact").is_null()) c.exact = parse_form(j.at("exact").get<std::string>());
  return c;
}

json fiber_json(const SingularFiber& f) {
  json j;
  j["param"] = pair_json(f.param);
  j["exact_param"] = f.exact_param ? json::array({(*f.exact_param)[0].to_string(), (*f.exact_param)[1].to_string()})
                                   : json(nullptr);
  j["special"] = f.special;
  j["reduced"] = f.reduced;
  j["euler"] = f.euler;
  j["euler_conic_line"] = f.euler_conic_line;
  j["remainder_degree"] = f.remainder_degree;
  json sp = json::array();
  for (const auto& s : f.singular_points)
    sp.push_back({{"coords", point_json(s.point)},
                  {"mu", s.milnor},
                  {"r", s.branches},
                  {"delta", s.delta},
                  {"critical_multiplicity", s.critical_multiplicity}});
  j["singular_points"] = sp;
  j["decomposed"] = f.decomposition.has_value();
  json lines = json::array(), conics = json::array();
  if (f.decomposition) {
    const auto& d = *f.decomposition;
    for (const auto& l : d.lines) lines.push_back(line_json(l));
    for (const auto& c : d.conics) conics.push_back(conic_json(c));
    j["q"] = d.q;
    j["is_conic_line"] = d.is_conic_line;
    j["concurrent"] = d.concurrent_point.has_value();
    j["concurrent_point"] = d.concurrent_point ? point_json(*d.concurrent_point) : json(nullptr);
    j["general_position"] = d.general_position;
    j["certified"] = d.certified;
  } else {
    j["q"] = 0;
    j["is_conic_line"] = false;
    j["concurrent"] = false;
    j["concurrent_point"] = nullptr;
    j["general_position"] = false;
    j["certified"] = false;
  }
  j["lines"] = lines;
  j["conics"] = conics;
  return j;
}

SingularFiber fiber_from(const json& j, const ExactForm& f, const ExactForm& g) {
  SingularFiber fib;
  fib.param = pair_from(j.at("param"));
  if (!j.at("exact_param").is_null())
    fib.exact_param = ExactPair{exact_from(j.at("exact_param").at(0)), exact_from(j.at("exact_param").at(1))};
  fib.special = j.at("special").get<bool>();
  fib.reduced = j.at("reduced").get<bool>();
  fib.euler = j.at("euler").get<int>();
  fib.euler_conic_line = j.at("euler_conic_line").get<int>();
  fib.remainder_degree = j.at("remainder_degree").get<int>();
  for (const auto& s : j.at("singular_points")) {
    SingularPoint p;
    p.point = point_from(s.at("coords"));
    p.milnor = s.at("mu").get<int>();
    p.branches = s.at("r").get<int>();
    p.delta = s.at("delta").get<int>();
    p.critical_multiplicity = s.at("critical_multiplicity").get<int>();
    fib.singular_points.push_back(p);
  }
  if (j.at("decomposed").get<bool>()) {
    Decomposition d;
    for (const auto& l : j.at("lines")) d.lines.push_back(line_from(l));
    for (const auto& c : j.at("conics")) d.conics.push_back(conic_from(c));
    d.q = j.at("q").get<int>();
    d.is_conic_line = j.at("is_conic_line").get<bool>();
    if (!j.at("concurrent_point").is_null()) d.concurrent_point = point_from(j.at("concurrent_point"));
    d.general_position = j.at("general_position").get<bool>();
    d.certified = j.at("certified").get<bool>();
    fib.decomposition = std::move(d);
  }
  const ProjPair n = normalize_pair(fib.param);
  fib.form = normalized(to_floating(f) * n[0] + to_floating(g) * n[1]);
  if (fib.exact_param) fib.exact_form = normalized(f * (*fib.exact_param)[0] + g * (*fib.exact_param)[1]);
  return fib;
}

}  // namespace

json complex_json(const Complex& z) { return json::array({num(z.real()), num(z.imag())}); }

Complex complex_from_json(const json& j) { return {num_from(j.at(0)), num_from(j.at(1))}; }

json to_json(const AnalysisReport& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["degree"] = r.degree;
  j["seed"] = std::to_string(r.seed);
  j["tolerances"] = tolerances_json(r.tol);
  j["f"] = format_form(r.f);
  j["g"] = format_form(r.g);
  json pts = json::array();
  for (const auto& p : r.base.points) pts.push_back({{"coords", point_json(p.point)}, {"multiplicity", p.multiplicity}});
  j["base_locus"] = {{"count", r.base.count}, {"transverse", r.base.transverse}, {"points", pts}};
  json fibers = json::array();
  for (const auto& f : r.fibers) fibers.push_back(fiber_json(f));
  j["fibers"] = fibers;
  j["summary"] = {{"m", r.m}, {"p", r.p}, {"qbar", r.qbar}};
  json entries = json::array();
  for (const auto& e : r.ledger.fibers)
    entries.push_back({{"param", pair_json(e.param)}, {"euler", e.euler}, {"milnor_total", e.milnor_total}});
  j["ledger"] = {{"e_surface", r.ledger.e_surface},
                 {"e_generic", r.ledger.e_generic},
                 {"genus", r.ledger.genus},
                 {"balance", r.ledger.balance},
                 {"fibers", entries}};
  json verdicts = json::array();
  for (const auto& v : r.verdicts)
    verdicts.push_back({{"name", v.name}, {"status", std::string(to_string(v.status))}, {"details", v.details}});
  j["verdicts"] = verdicts;
  return j;
}

AnalysisReport report_from_json(const json& j) {
  try {
    if (j.at("schema_version").get<int>() != kSchemaVersion) throw Error(Errc::ParseError, "unsupported schema version");
    AnalysisReport r;
    r.degree = j.at("degree").get<int>();
    r.seed = std::stoull(j.at("seed").get<std::string>());
    r.tol = tolerances_from(j.at("tolerances"));
    r.f = parse_form(j.at("f").get<std::string>());
    r.g = parse_form(j.at("g").get<std::string>());
    const auto& b = j.at("base_locus");
    r.base.count = b.at("count").get<int>();
    r.base.transverse = b.at("transverse").get<bool>();
    for (const auto& p : b.at("points")) r.base.points.push_back({point_from(p.at("coords")), p.at("multiplicity").get<int>()});
    for (const auto& f : j.at("fibers")) r.fibers.push_back(fiber_from(f, r.f, r.g));
    r.m = j.at("summary").at("m").get<int>();
    r.p = j.at("summary").at("p").get<int>();
    r.qbar = j.at("summary").at("qbar").get<int>();
    const auto& l = j.at("ledger");
    r.ledger.degree = r.degree;
    r.ledger.e_surface = l.at("e_surface").get<int>();
    r.ledger.e_generic = l.at("e_generic").get<int>();
    r.ledger.genus = l.at("genus").get<int>();
    r.ledger.balance = l.at("balance").get<int>();
    for (const auto& e : l.at("fibers"))
      r.ledger.fibers.push_back({pair_from(e.at("param")), e.at("euler").get<int>(), e.at("milnor_total").get<int>()});
    for (const auto& v : j.at("verdicts")) {
      const std::string s = v.at("status").get<std::string>();
      const Status st = s == "pass" ? Status::Pass : s == "fail" ? Status::Fail : Status::NotApplicable;
      if (s != "pass" && s != "fail" && s != "not-applicable") throw Error(Errc::ParseError, "bad status '" + s + "'");
      r.verdicts.push_back({v.at("name").get<std::string>(), st, v.at("details").get<std::string>()});
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("malformed report: ") + e.what());
  } catch (const std::logic_error& e) {
    throw Error(Errc::ParseError, std::string("malformed report: ") + e.what());
  }
}

std::string serialize(const AnalysisReport& r) { return to_json(r).dump(2) + "\n"; }

AnalysisReport deserialize(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("invalid JSON: ") + e.what());
  }
  return report_from_json(j);
}

void write_report(const AnalysisReport& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot open '" + path + "' for writing");
  out << serialize(r);
  if (!out) throw Error(Errc::Io, "write to '" + path + "' failed");
}

AnalysisReport read_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return deserialize(ss.str());
}

}  // namespace clp
