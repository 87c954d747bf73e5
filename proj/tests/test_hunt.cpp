#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "clp/hunt.hpp"

using namespace clp;
using nlohmann::json;

namespace {

std::vector<std::string> run(const HuntConfig& cfg, HuntSummary* sum = nullptr) {
  std::vector<std::string> lines;
  const auto s = run_hunt(cfg, [&](const json& j) { lines.push_back(j.dump()); });
  if (sum) *sum = s;
  return lines;
}

HuntConfig config(int trials, int workers) {
  HuntConfig cfg;
  cfg.degree = 3;
  cfg.trials = trials;
  cfg.kind = Template::ConicLinePair;
  cfg.seed = 42;
  cfg.workers = workers;
  return cfg;
}

}  // namespace

TEST_CASE("templates") {
  for (const char* t : {"random-dense", "conic-line-pair", "pa-like"}) CHECK(to_string(parse_template(t)) == t);
  CHECK_THROWS_AS(parse_template("cubic-fan"), Error);
}

TEST_CASE("generators are deterministic and of the requested degree") {
  for (auto kind : {Template::RandomDense, Template::ConicLinePair, Template::PaLike})
    for (int d = 3; d <= 6; ++d) {
      HuntConfig cfg = config(1, 1);
      cfg.kind = kind;
      cfg.degree = d;
      const auto [f, g] = hunt_generators(cfg, 3);
      const auto [f2, g2] = hunt_generators(cfg, 3);
      CHECK(f.degree() == d);
      CHECK(g.degree() == d);
      CHECK(format_form(f) == format_form(f2));
      CHECK(format_form(g) == format_form(g2));
    }
  HuntConfig low = config(1, 1);
  low.degree = 2;
  CHECK_THROWS_AS(hunt_generators(low, 0), Error);
}

TEST_CASE("zero trials give an empty stream") {
  HuntSummary s;
  CHECK(run(config(0, 4), &s).empty());
  CHECK(s.records == 0);
  CHECK(s.candidates == 0);
}

TEST_CASE("records are deterministic and independent of the worker count") {
  HuntSummary s;
  const auto one = run(config(12, 1), &s);
  CHECK(one.size() == 12);
  CHECK(s.records == 12);
  CHECK(s.analyzed + s.skipped == 12);
  CHECK(run(config(12, 1)) == one);
  CHECK(run(config(12, 4)) == one);
}

TEST_CASE("records carry inputs, counts and verdicts") {
  HuntConfig cfg = config(12, 4);
  std::vector<json> recs;
  int reports = 0;
  const auto s = run_hunt(
      cfg, [&](const json& j) { recs.push_back(j); }, {}, [&](const AnalysisReport& r) {
        ++reports;
        CHECK(r.m <= 6 - r.p);
        CHECK(r.p <= 3);
      });
  CHECK(reports == s.analyzed);
  for (int i = 0; i < static_cast<int>(recs.size()); ++i) {
    const auto& j = recs[i];
    CHECK(j.at("trial") == i);
    CHECK(j.contains("f"));
    CHECK(j.contains("g"));
    CHECK(j.contains("seed"));
    if (j.at("status") == "analyzed") {
      CHECK(j.contains("m"));
      CHECK(j.contains("p"));
      CHECK(j.contains("qbar"));
      CHECK(j.contains("verdicts"));
      CHECK(j.at("violation") == false);
    }
  }
  CHECK(s.violations == 0);
}

TEST_CASE("negative trial count is refused") { CHECK_THROWS_AS(run(config(-1, 1)), Error); }
