#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"

#include "clp/families.hpp"
#include "clp/hunt.hpp"
#include "clp/plot.hpp"
#include "clp/report.hpp"

using namespace clp;
using nlohmann::json;

namespace {

// Input the pencil machinery refuses, as opposed to a failure of the machinery itself.
bool structural(Errc c) {
  static const std::set<Errc> codes{Errc::ParseError,       Errc::NotHomogeneous,  Errc::DegreeMismatch,
                                    Errc::ZeroForm,         Errc::CommonComponent, Errc::NotTransverse,
                                    Errc::NonReducedMember, Errc::NonReducedInput, Errc::DegenerateEliminant,
                                    Errc::BadParameter,     Errc::NothingToPlot};
  return codes.count(c) > 0;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write " + path);
  out << text;
  if (!out) throw Error(Errc::Io, "write failed: " + path);
}

struct Options {
  Tolerances tol;
  std::uint64_t seed = 1;
  std::string f, g, out, corpus = "default", report, candidates, template_name = "conic-line-pair";
  int degree = 3, trials = 0, workers = 1;
  bool inject_wrong_mu = false;
  std::string family_a = "2";
  int family_d = 3;
};

void add_tolerances(CLI::App* cmd, Options& o) {
  auto positive = CLI::PositiveNumber;
  cmd->add_option("--tol", o.tol.tau, "residual tolerance")->check(positive);
  cmd->add_option("--tol-div", o.tol.tau_div, "division residual tolerance")->check(positive);
  cmd->add_option("--rho-c", o.tol.rho_c, "cluster radius")->check(positive);
  cmd->add_option("--rho-loc", o.tol.rho_loc, "locality radius")->check(positive);
  cmd->add_option("--epsilon", o.tol.epsilon, "gradient perturbation")->check(positive);
}

int cmd_analyze(const Options& o) {
  const ExactForm f = parse_form(o.f), g = parse_form(o.g);
  const AnalysisReport r = analyze_pencil(f, g, o.seed, o.tol);
  const std::string text = serialize(r);
  if (o.out.empty())
    std::cout << text;
  else
    write_text(o.out, text);
  std::cerr << "m=" << r.m << " p=" << r.p << " qbar=" << r.qbar << " balance=" << r.ledger.balance << "\n";
  return 0;
}

void inject_wrong_mu(AnalysisReport& r) {
  for (auto& fib : r.fibers)
    if (!fib.singular_points.empty()) {
      ++fib.singular_points.front().milnor;
      break;
    }
  summarize(r);
  r.verdicts = run_checks(r);
}

int cmd_verify(const Options& o) {
  const auto families = corpus(o.corpus);
  int checks = 0, passed = 0, failed = 0, skipped = 0;
  auto tally = [&](const std::string& label, const Verdict& v) {
    ++checks;
    if (v.status == Status::Pass) ++passed;
    if (v.status == Status::Fail) ++failed;
    if (v.status == Status::NotApplicable) ++skipped;
    std::cout << label << " " << to_string(v.status) << " " << v.name << ": " << v.details << "\n";
  };
  for (const auto& fam : families) {
    const std::string label = fam.name + (fam.parameters.empty() ? "" : " " + fam.parameters);
    AnalysisReport r;
    try {
      r = analyze_pencil(fam.f, fam.g, o.seed, o.tol);
    } catch (const Error& e) {
      tally(label, Verdict{"analysis", Status::Fail, e.what()});
      continue;
    }
    if (o.inject_wrong_mu) inject_wrong_mu(r);
    for (const auto& v : r.verdicts) tally(label, v);
    tally(label, check_expected_table(r, fam));
  }
  std::cout << "families " << families.size() << " checks " << checks << " pass " << passed << " fail " << failed
            << " not-applicable " << skipped << "\n";
  return failed > 0 ? 1 : 0;
}

int cmd_hunt(const Options& o) {
  HuntConfig cfg;
  cfg.degree = o.degree;
  cfg.trials = o.trials;
  cfg.kind = parse_template(o.template_name);
  cfg.seed = o.seed;
  cfg.workers = o.workers;
  cfg.tol = o.tol;
  std::ofstream out(o.out, std::ios::app | std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot open " + o.out);
  const std::string cpath = o.candidates.empty() ? o.out + ".candidates" : o.candidates;
  std::ofstream cand;
  const auto sum = run_hunt(
      cfg, [&](const json& rec) { out << rec.dump() << "\n" << std::flush; },
      [&](const json& rec) {
        if (!cand.is_open()) cand.open(cpath, std::ios::app | std::ios::binary);
        cand << rec.dump() << "\n" << std::flush;
      });
  std::cerr << "records " << sum.records << " analyzed " << sum.analyzed << " skipped " << sum.skipped
            << " candidates " << sum.candidates << " violations " << sum.violations << " check-failures "
            << sum.check_failures << "\n";
  return sum.violations > 0 ? 1 : 0;
}

int cmd_plot(const Options& o) {
  write_text(o.out, render_svg(read_report(o.report)));
  return 0;
}

json family_json(const FamilySpec& s) {
  json members = json::array();
  for (const auto& m : s.expected) {
    json factors = json::array();
    for (const auto& h : m.factors) factors.push_back(format_form(h));
    json e{{"param", json::array({complex_json(m.param[0]), complex_json(m.param[1])})},
           {"lines", m.lines},
           {"conics", m.conics},
           {"concurrent", m.concurrent},
           {"euler", m.euler},
           {"factors", factors}};
    if (m.exact_param) e["exact_param"] = json::array({m.exact_param->at(0).to_string(), m.exact_param->at(1).to_string()});
    if (m.general_position) e["general_position"] = *m.general_position;
    members.push_back(e);
  }
  json j{{"name", s.name}, {"parameters", s.parameters}, {"f", format_form(s.f)}, {"g", format_form(s.g)},
         {"p", s.p},       {"members", members}};
  if (s.non_special) j["non_special"] = *s.non_special;
  return j;
}

int cmd_family(const std::string& which, const Options& o) {
  FamilySpec s;
  if (which == "fermat")
    s = fermat_family(o.family_d);
  else if (which == "pa") {
    const ExactForm a = parse_form(o.family_a);
    if (a.degree() != 0) throw Error(Errc::BadParameter, "pa parameter must be a constant");
    s = pa_family(a.coeff(0, 0, 0));
  } else
    s = hesse_family();
  const std::string text = family_json(s).dump(2) + "\n";
  if (o.out.empty())
    std::cout << text;
  else
    write_text(o.out, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pencils of plane curves: singular members, conic-line decompositions, Euler ledgers"};
  app.require_subcommand(1);
  Options o;

  auto* analyze = app.add_subcommand("analyze", "analyze the pencil spanned by two forms");
  analyze->add_option("--f", o.f, "first generator")->required();
  analyze->add_option("--g", o.g, "second generator")->required();
  analyze->add_option("--seed", o.seed, "random seed");
  analyze->add_option("--out", o.out, "report path (stdout when absent)");
  add_tolerances(analyze, o);

  auto* verify = app.add_subcommand("verify", "run every check over a built-in corpus");
  verify->add_option("--corpus", o.corpus, "default, empty, fermat:N, pa:A or hesse");
  verify->add_option("--seed", o.seed, "random seed");
  verify->add_flag("--inject-wrong-mu", o.inject_wrong_mu, "corrupt one Milnor number before checking");
  add_tolerances(verify, o);

  auto* hunt = app.add_subcommand("hunt", "search random pencils for many conic-line members");
  hunt->add_option("--degree", o.degree, "member degree")->required();
  hunt->add_option("--trials", o.trials, "number of trials")->required()->check(CLI::NonNegativeNumber);
  hunt->add_option("--template", o.template_name, "random-dense, conic-line-pair or pa-like")->required();
  hunt->add_option("--seed", o.seed, "random seed")->required();
  hunt->add_option("--out", o.out, "JSONL output, appended")->required();
  hunt->add_option("--candidates", o.candidates, "JSONL stream for m >= 5 (default OUT.candidates)");
  hunt->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
  add_tolerances(hunt, o);

  auto* plot = app.add_subcommand("plot", "SVG of the real conic-line members of a report");
  plot->add_option("--report", o.report, "report path")->required()->check(CLI::ExistingFile);
  plot->add_option("--out", o.out, "SVG path")->required();

  auto* family = app.add_subcommand("family", "print a built-in family and its expected members");
  family->require_subcommand(1);
  auto* fermat = family->add_subcommand("fermat", "x^d - y^d, y^d - z^d");
  fermat->add_option("--d", o.family_d, "degree")->check(CLI::Range(2, 64));
  auto* pa = family->add_subcommand("pa", "the P_a family");
  pa->add_option("--a", o.family_a, "rational parameter");
  auto* hesse = family->add_subcommand("hesse", "x^3 + y^3 + z^3, xyz");
  for (auto* sub : {fermat, pa, hesse}) sub->add_option("--out", o.out, "output path (stdout when absent)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) return cmd_analyze(o);
    if (*verify) return cmd_verify(o);
    if (*hunt) return cmd_hunt(o);
    if (*plot) return cmd_plot(o);
    if (*family) return cmd_family(family->get_subcommands().front()->get_name(), o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return structural(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
