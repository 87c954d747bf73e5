#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "clp/euler.hpp"

using namespace clp;

namespace {

ExactForm P(const char* s) { return parse_form(s); }

const ProjPoint origin(0, 0, 1);

Decomposition decompose(const ExactForm& h) {
  const auto c = detect_components(to_floating(h), {}, 9, {}, h);
  REQUIRE(std::holds_alternative<Decomposition>(c));
  return std::get<Decomposition>(c);
}

}  // namespace

TEST_CASE("Milnor numbers of simple singularities") {
  // A_k: y^2 = x^(k+1) has mu = k
  CHECK(milnor_polar(P("y^2*z - x^2*(x + z)"), origin, 1) == 1);
  CHECK(milnor_polar(P("y^2*z - x^3"), origin, 2) == 2);
  CHECK(milnor_polar(P("y^2*z^2 - x^4"), origin, 3) == 3);
  CHECK(milnor_polar(P("y^2*z^3 - x^5"), origin, 4) == 4);
  // D_4 and ordinary k-fold points: mu = (k - 1)^2
  CHECK(milnor_polar(P("x^3 - y^3"), origin, 5) == 4);
  CHECK(milnor_polar(P("x^4 - y^4"), origin, 6) == 9);
  CHECK(milnor_polar(P("x^5 - y^5"), origin, 7) == 16);
  // E_6: y^3 = x^4
  CHECK(milnor_polar(P("y^3*z - x^4"), origin, 8) == 6);
}

TEST_CASE("perturbed gradient count agrees with the polar count") {
  for (const char* s : {"y^2*z - x^2*(x + z)", "y^2*z - x^3", "y^2*z^2 - x^4", "x^3 - y^3", "y^3*z - x^4"}) {
    CAPTURE(s);
    const ExactForm h = P(s);
    CHECK(milnor_number(h, origin, 11) == milnor_polar(h, origin, 12));
    CHECK(milnor_number(to_floating(h), origin, 13) == milnor_polar(h, origin, 14));
  }
}

TEST_CASE("Milnor number at a smooth point is zero") {
  CHECK(milnor_polar(P("y*z - x^2"), origin, 1) == 0);
}

TEST_CASE("Milnor number is invariant under coordinate change") {
  const ExactForm h = P("y^2*z^2 - x^4");
  for (std::uint64_t s = 1; s <= 4; ++s) {
    const ExactTransform t = random_integer_transform(100 + s, 5);
    const ExactForm ht = apply(t, h);
    const ProjPoint pt = map_point(to_floating(t).inverse(), origin);
    CHECK(milnor_polar(ht, pt, s) == 3);
  }
}

TEST_CASE("non-isolated singularity is reported") {
  CHECK_THROWS_AS(milnor_polar(P("x^2*y"), ProjPoint(0, 1, 0), 1), Error);
}

TEST_CASE("local intersection numbers") {
  CHECK(local_intersection(P("y*z - x^2"), P("y"), origin, 1) == 2);
  CHECK(local_intersection(P("y*z^2 - x^3"), P("y"), origin, 2) == 3);
  CHECK(local_intersection(P("x"), P("y"), origin, 3) == 1);
  CHECK(local_intersection(to_floating(P("y*z - x^2")), to_floating(P("y")), origin, 4) == 2);
}

TEST_CASE("delta invariant and the branch formula") {
  struct Case {
    const char* h;
    ProjPoint p;
    int mu, delta, r;
  };
  const Case cases[] = {
      {"x*y*(x - y)", origin, 4, 3, 3},
      {"(y*z - x^2)*(y*z + x^2)", origin, 3, 2, 2},
      {"y*(y*z - x^2)", origin, 3, 2, 2},
      {"x*y*(x + y - z)", origin, 1, 1, 2},
  };
  for (const auto& c : cases) {
    CAPTURE(c.h);
    const ExactForm h = P(c.h);
    const auto dec = decompose(h);
    CHECK(branch_count(dec, c.p) == c.r);
    CHECK(delta_invariant(dec, c.p, 1) == c.delta);
    CHECK(milnor_polar(h, c.p, 2) == c.mu);
    CHECK(c.mu == 2 * c.delta - c.r + 1);
  }
}

TEST_CASE("Euler characteristic of a fiber") {
  // smooth degree d curve: 2 - 2g = 3d - d^2
  for (int d = 1; d <= 8; ++d) CHECK(euler_fiber(d, {}) == 2 - (d - 1) * (d - 2));
  const int four[] = {4};
  CHECK(euler_fiber(3, four) == 4);
  const int nodes[] = {1, 1, 1};
  CHECK(euler_fiber(3, nodes) == 3);
}

TEST_CASE("conic-line Euler characteristic matches the Milnor formula") {
  for (const char* s : {"x*y*z", "x^3 - y^3", "(x - 2*y)*(x^2 + y^2 - z^2)", "x*y*(x - y)*(x + y - z)"}) {
    CAPTURE(s);
    const ExactForm h = P(s);
    const auto dec = decompose(h);
    std::vector<LocalSingularity> sing;
    std::vector<int> mus;
    const auto comps = dec.components();
    for (std::size_t i = 0; i < comps.size(); ++i)
      for (std::size_t j = i + 1; j < comps.size(); ++j)
        for (const auto& ip : intersect(comps[i], comps[j], 3)) {
          bool seen = false;
          for (const auto& s2 : sing) seen = seen || chordal_distance(s2.point, ip.point) < 1e-6;
          if (seen) continue;
          LocalSingularity ls;
          ls.point = ip.point;
          ls.branches = branch_count(dec, ip.point);
          ls.milnor = milnor_polar(h, ip.point, 4);
          sing.push_back(ls);
          mus.push_back(ls.milnor);
        }
    CHECK(euler_conic_line(dec, sing) == euler_fiber(h.degree(), mus));
  }
}

TEST_CASE("node count in general position") {
  CHECK(node_count_general_position(3, 0) == 3);
  CHECK(node_count_general_position(3, 1) == 2);
  CHECK(node_count_general_position(5, 2) == 8);
  CHECK_THROWS_AS(node_count_general_position(3, 2), Error);
}

TEST_CASE("global ledger balance") {
  // three fibers of three concurrent lines for d = 3
  std::vector<LedgerEntry> f(3);
  for (auto& e : f) {
    e.euler = 4;
    e.milnor_total = 4;
  }
  const Ledger l = global_ledger(f, 3);
  CHECK(l.e_surface == 12);
  CHECK(l.e_generic == 0);
  CHECK(l.genus == 1);
  CHECK(l.balance == 0);
  f.pop_back();
  CHECK(global_ledger(f, 3).balance == 4);
}
