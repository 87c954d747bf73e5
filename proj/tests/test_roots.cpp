#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "clp/roots.hpp"
#include "clp/rng.hpp"

using namespace clp;

namespace {

ExactForm P(const char* s) { return parse_form(s); }

int total_multiplicity(const std::vector<RootCluster>& cl) {
  int n = 0;
  for (const auto& c : cl) n += c.multiplicity;
  return n;
}

/// Binary form prod (s - r_k t) from its roots.
Binary from_roots(const std::vector<Complex>& roots) {
  Binary b(std::vector<Complex>{1.0});
  for (const auto& r : roots) b = b * Binary(std::vector<Complex>{-r, 1.0});
  return b;
}

ExactBinary exact_from_roots(const std::vector<QComplex>& roots) {
  ExactBinary b(std::vector<QComplex>{QComplex(1)});
  for (const auto& r : roots) b = b * ExactBinary(std::vector<QComplex>{-r, QComplex(1)});
  return b;
}

bool has_root(const std::vector<RootCluster>& cl, ProjPair p, int mult, double tol) {
  const ProjPair n = normalize_pair(p);
  return std::any_of(cl.begin(), cl.end(), [&](const RootCluster& c) {
    return c.multiplicity == mult && chordal_distance(c.representative, n) < tol;
  });
}

}  // namespace

TEST_CASE("sum of two squares") {
  const Binary b(std::vector<Complex>{1.0, 0.0, 1.0});
  const auto cl = solve_binary(b);
  REQUIRE(cl.size() == 2);
  CHECK(has_root(cl, {Complex(0, 1), 1.0}, 1, 1e-12));
  CHECK(has_root(cl, {Complex(0, -1), 1.0}, 1, 1e-12));
}

TEST_CASE("triple root clusters into one") {
  const auto cl = solve_binary(from_roots({1.0, 1.0, 1.0}));
  REQUIRE(cl.size() == 1);
  CHECK(cl[0].multiplicity == 3);
  CHECK(chordal_distance(cl[0].representative, ProjPair{1.0, 1.0}) < 1e-5);
}

TEST_CASE("roots at infinity and zero") {
  // s^2 t (s - 2t): roots [0:1] twice... coefficient k multiplies s^k t^(4-k).
  // s^2 t (s - 2 t) = s^3 t - 2 s^2 t^2 -> coeffs [0, 0, -2, 1, 0].
  const Binary b(std::vector<Complex>{0.0, 0.0, -2.0, 1.0, 0.0});
  const auto cl = solve_binary(b);
  CHECK(total_multiplicity(cl) == 4);
  CHECK(has_root(cl, {1.0, 0.0}, 1, 1e-14));
  CHECK(has_root(cl, {0.0, 1.0}, 2, 1e-14));
  CHECK(has_root(cl, {2.0, 1.0}, 1, 1e-12));
}

TEST_CASE("zero form is rejected") {
  CHECK_THROWS_AS(solve_binary(Binary(3)), Error);
  CHECK_THROWS_AS(solve_binary(ExactBinary(2)), Error);
}

TEST_CASE("Fermat eliminant shadows: three triple roots") {
  const auto e = resultant_eliminate(to_floating(P("x^3-y^3")), to_floating(P("y^3-z^3")), Var::Z);
  const auto cl = solve_binary(e.eliminant);
  // Oracle: shadows are the cube roots of unity, each with multiplicity 3 in (s^3 - t^3)^3.
  const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  CHECK(total_multiplicity(cl) == 9);
  REQUIRE(cl.size() == 3);
  for (const Complex r : {Complex(1.0), w, w * w}) CHECK(has_root(cl, {r, 1.0}, 3, 1e-4));

  const auto ex = resultant_eliminate(P("x^3-y^3"), P("y^3-z^3"), Var::Z);
  const auto cx = solve_binary(ex.eliminant);
  REQUIRE(cx.size() == 3);
  for (const Complex r : {Complex(1.0), w, w * w}) CHECK(has_root(cx, {r, 1.0}, 3, 1e-13));
}

TEST_CASE("random forms: full root count and small residuals") {
  Rng rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(1, 36));
    std::vector<Complex> c(n + 1);
    for (auto& v : c) v = rng.complex_gaussian();
    const Binary b(c);
    const auto cl = solve_binary(b);
    CHECK(total_multiplicity(cl) == n);
    for (const auto& r : cl) CHECK(r.max_residual <= 1e-8);
  }
}

TEST_CASE("clusters are separated") {
  const auto cl = solve_binary(from_roots({0.5, 0.5, -1.0, Complex(0, 2), Complex(0, 2), Complex(0, 2), 3.0}));
  CHECK(total_multiplicity(cl) == 7);
  for (std::size_t i = 0; i < cl.size(); ++i)
    for (std::size_t j = i + 1; j < cl.size(); ++j)
      CHECK(chordal_distance(cl[i].representative, cl[j].representative) > 2 * std::max(cl[i].radius, cl[j].radius));
}

TEST_CASE("deterministic ordering") {
  Rng rng(7);
  std::vector<Complex> c(12);
  for (auto& v : c) v = rng.complex_gaussian();
  const auto a = solve_binary(Binary(c)), b = solve_binary(Binary(c));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].representative == b[i].representative);
}

TEST_CASE("aberth on a polynomial with widely spread roots") {
  std::vector<Complex> roots{1e-3, 1e3, -7.0, Complex(0, 0.01), Complex(50, 50)};
  const Binary b = from_roots(roots);
  std::vector<Complex> z;
  REQUIRE(aberth(b.coeffs(), z, 500));
  for (const auto& r : roots) {
    double best = 1e300;
    for (const auto& v : z) best = std::min(best, std::abs(v - r) / std::abs(r));
    CHECK(best < 1e-10);
  }
}

TEST_CASE("exact solve: multiplicities from the square-free decomposition") {
  const QComplex half(mpq_class(1, 2));
  const ExactBinary b = exact_from_roots({QComplex(1), QComplex(1), QComplex(1), QComplex(1), half, QComplex::i(),
                                          QComplex::i(), QComplex(-3)});
  const auto cl = solve_binary(b);
  CHECK(total_multiplicity(cl) == 8);
  CHECK(has_root(cl, {1.0, 1.0}, 4, 1e-14));
  CHECK(has_root(cl, {0.5, 1.0}, 1, 1e-14));
  CHECK(has_root(cl, {Complex(0, 1), 1.0}, 2, 1e-14));
  CHECK(has_root(cl, {-3.0, 1.0}, 1, 1e-14));
}

TEST_CASE("square-free decomposition") {
  // (s-1)^3 (s+2)^2 (s-i)
  QPoly p{QComplex(1)};
  auto mul = [](const QPoly& a, const QPoly& b) {
    QPoly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
  };
  const QPoly l1{QComplex(-1), QComplex(1)}, l2{QComplex(2), QComplex(1)}, l3{-QComplex::i(), QComplex(1)};
  p = mul(mul(mul(mul(mul(mul(p, l1), l1), l1), l2), l2), l3);
  const auto sf = squarefree_decomposition(p);
  REQUIRE(sf.size() == 3);
  CHECK(sf[0].second == 1);
  CHECK(sf[0].first == l3);
  CHECK(sf[1].second == 2);
  CHECK(sf[1].first == l2);
  CHECK(sf[2].second == 3);
  CHECK(sf[2].first == l1);
}

TEST_CASE("point clustering") {
  const std::vector<ProjPoint> two{ProjPoint(1.0, 0.0, 0.0), ProjPoint(1.0, 0.0, 0.0)};
  CHECK(cluster_points(two, 1e-6).size() == 1);
  const std::vector<ProjPoint> apart{ProjPoint(1.0, 0.0, 0.0), ProjPoint(0.0, 1.0, 0.0)};
  CHECK(cluster_points(apart, 1e-6).size() == 2);
  CHECK_THROWS_AS(cluster_points(apart, 0.0), Error);

  // The nine Fermat base points [1 : w^a : w^b].
  std::vector<ProjPoint> base;
  const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) base.emplace_back(1.0, std::pow(w, a), std::pow(w, b));
  CHECK(cluster_points(base, 1e-6).size() == 9);
}

TEST_CASE("exact intersection of a line and a tangent conic") {
  const auto pts = intersect(P("z - y"), P("x^2 + y^2 - z^2"), 1);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].multiplicity == 2);
  CHECK(chordal_distance(pts[0].point, ProjPoint(0.0, 1.0, 1.0)) < 1e-12);
}

TEST_CASE("exact intersection: Fermat base locus") {
  const auto pts = intersect(P("x^3-y^3"), P("y^3-z^3"), 5);
  REQUIRE(pts.size() == 9);
  const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const ProjPoint q(1.0, std::pow(w, a), std::pow(w, b));
      const bool found = std::any_of(pts.begin(), pts.end(), [&](const IntersectionPoint& p) {
        return p.multiplicity == 1 && chordal_distance(p.point, q) < 1e-12;
      });
      CHECK(found);
    }
}

TEST_CASE("exact intersection: two conics with a fourfold contact") {
  // y z = x^2 and y z = x^2 + y^2 meet only at [0:0:1] with multiplicity 4.
  const auto pts = intersect(P("y*z - x^2"), P("y*z - x^2 - y^2"), 9);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].multiplicity == 4);
  CHECK(chordal_distance(pts[0].point, ProjPoint(0.0, 0.0, 1.0)) < 1e-12);
}

TEST_CASE("shared components are detected") {
  CHECK_THROWS_AS(intersect(P("x*(y-z)"), P("x*(y+z)"), 3), Error);
  try {
    (void)intersect(P("x*(y-z)"), P("x*(y+z)"), 3);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SharedComponent);
  }
}

TEST_CASE("numeric intersection agrees with the exact route") {
  const ExactForm f = P("(x-2*y)(x^2+y^2-z^2)"), g = P("(x-y)(x^2-x*y+y^2-z^2)");
  const auto ex = intersect(f, g, 2);
  const auto nu = intersect(to_floating(f), to_floating(g), 2);
  int ne = 0, nn = 0;
  for (const auto& p : ex) ne += p.multiplicity;
  for (const auto& p : nu) nn += p.multiplicity;
  CHECK(ne == 9);
  CHECK(nn == 9);
  CHECK(ex.size() == 9);
  for (const auto& p : ex) {
    const bool found = std::any_of(nu.begin(), nu.end(), [&](const IntersectionPoint& q) {
      return chordal_distance(p.point, q.point) < 1e-6;
    });
    CHECK(found);
  }
}
