#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>

#include "clp/families.hpp"
#include "clp/plot.hpp"
#include "clp/report.hpp"

using namespace clp;

namespace {

ExactForm P(const char* s) { return parse_form(s); }

const AnalysisReport& p2() {
  static const AnalysisReport r = analyze_pencil(P("(x-2*y)*(x^2+y^2-z^2)"), P("(x-y)*(x^2-x*y+y^2-z^2)"), 1);
  return r;
}

void same_reports(const AnalysisReport& a, const AnalysisReport& b) {
  CHECK(a.degree == b.degree);
  CHECK(a.seed == b.seed);
  CHECK(a.m == b.m);
  CHECK(a.p == b.p);
  CHECK(a.qbar == b.qbar);
  CHECK(a.ledger.balance == b.ledger.balance);
  CHECK(a.base.count == b.base.count);
  REQUIRE(a.fibers.size() == b.fibers.size());
  for (std::size_t i = 0; i < a.fibers.size(); ++i) {
    const auto &x = a.fibers[i], &y = b.fibers[i];
    CHECK(chordal_distance(x.param, y.param) == 0.0);
    CHECK(x.euler == y.euler);
    CHECK(x.special == y.special);
    CHECK(x.milnor_total() == y.milnor_total());
    CHECK(x.singular_points.size() == y.singular_points.size());
    CHECK(x.decomposition.has_value() == y.decomposition.has_value());
  }
  REQUIRE(a.verdicts.size() == b.verdicts.size());
  for (std::size_t i = 0; i < a.verdicts.size(); ++i) {
    CHECK(a.verdicts[i].name == b.verdicts[i].name);
    CHECK(a.verdicts[i].status == b.verdicts[i].status);
    CHECK(a.verdicts[i].details == b.verdicts[i].details);
  }
}

}  // namespace

TEST_CASE("report round-trip is lossless") {
  const std::string text = serialize(p2());
  const AnalysisReport back = deserialize(text);
  same_reports(p2(), back);
  CHECK(serialize(back) == text);
}

TEST_CASE("report file round-trip") {
  const auto path = std::filesystem::temp_directory_path() / "clp_test_report.json";
  write_report(p2(), path.string());
  same_reports(p2(), read_report(path.string()));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_report((path.string() + ".missing")), Error);
}

TEST_CASE("report fields") {
  const auto j = nlohmann::json::parse(serialize(p2()));
  for (const char* k : {"schema_version", "degree", "seed", "tolerances", "base_locus", "fibers", "summary", "ledger",
                        "verdicts"})
    CHECK(j.contains(k));
  CHECK(j.at("schema_version") == kSchemaVersion);
  CHECK(j.at("summary").at("m") == 4);
}

TEST_CASE("malformed reports are rejected") {
  CHECK_THROWS_AS(deserialize("{"), Error);
  CHECK_THROWS_AS(deserialize("{}"), Error);
  auto j = nlohmann::json::parse(serialize(p2()));
  j["schema_version"] = kSchemaVersion + 1;
  CHECK_THROWS_AS(deserialize(j.dump()), Error);
}

TEST_CASE("complex numbers keep every bit") {
  for (const Complex z : {Complex(0.1, -1.0 / 3.0), Complex(1e-300, 7e300), Complex(-0.0, 2.5)}) {
    const Complex back = complex_from_json(complex_json(z));
    CHECK(back.real() == z.real());
    CHECK(back.imag() == z.imag());
  }
}

TEST_CASE("analysis is byte-deterministic") {
  const auto again = analyze_pencil(P("(x-2*y)*(x^2+y^2-z^2)"), P("(x-y)*(x^2-x*y+y^2-z^2)"), 1);
  CHECK(serialize(again) == serialize(p2()));
}

TEST_CASE("plot of P_2") {
  const std::string svg = render_svg(p2());
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(render_svg(p2()) == svg);
  CHECK(render_svg(deserialize(serialize(p2()))) == svg);
}

TEST_CASE("nothing to plot") {
  AnalysisReport r = p2();
  r.fibers.clear();
  summarize(r);
  try {
    render_svg(r);
    FAIL("rendered an empty report");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NothingToPlot);
  }
}
