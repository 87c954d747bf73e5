#include "clp/euler.hpp"

#include <algorithm>

#include "clp/rng.hpp"

namespace clp {

namespace {

constexpr double kOnCurve = 1e-12;

template <class Points>
int count_near(const Points& pts, const ProjPoint& p, double radius) {
  int n = 0;
  for (const auto& ip : pts)
    if (chordal_distance(ip.point, p) <= radius) n += ip.multiplicity;
  return n;
}

/// Polar points near p where the curve itself does not pass.
int count_off_curve(const std::vector<IntersectionPoint>& polar, const Form& h, const ProjPoint& p, double radius) {
  int n = 0;
  for (const auto& ip : polar)
    if (chordal_distance(ip.point, p) <= radius && relative_value(h, ip.point) > kOnCurve) n += ip.multiplicity;
  return n;
}

/// Points of the transformed curve, moved back to the caller's coordinates.
std::vector<IntersectionPoint> mapped(std::vector<IntersectionPoint> pts, const Transform& t) {
  for (auto& ip : pts) ip.point = map_point(t, ip.point);
  return pts;
}

std::pair<int, int> other_axes(int chart) {
  switch (chart) {
    case 0: return {1, 2};
    case 1: return {0, 2};
    default: return {0, 1};
  }
}

double max_coeff(const Form& f) {
  double m = 0;
  for (const auto& c : f.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

QComplex random_unit_rational(Rng& rng) {
  return QComplex(mpq_class(rng.uniform_int(-1000, 1000), 1000), mpq_class(rng.uniform_int(-1000, 1000), 1000));
}

int milnor_once(const Form& h, const ProjPoint& p, std::uint64_t seed, const Tolerances& tol) {
  Rng rng(seed);
  const Transform t = random_transform(rng.fork());
  const Form ht = normalized(clp::apply(t, h));
  const ProjPoint pt = map_point(t.inverse(), p);
  const auto [u, v] = other_axes(pt.chart());
  const Form wpow = power(Form::variable(static_cast<Var>(pt.chart())), h.degree() - 1);
  const double eps = tol.epsilon * max_coeff(ht);
  const Complex a = std::polar(1.0, rng.uniform(0, 6.283185307179586));
  const Complex b = std::polar(1.0, rng.uniform(0, 6.283185307179586));
  const Form gu = partial(ht, static_cast<Var>(u)) - wpow * (eps * a);
  const Form gv = partial(ht, static_cast<Var>(v)) - wpow * (eps * b);
  RootOptions ro;
  ro.cluster_radius = tol.rho_c * 1e-3;
  const int perturbed = count_near(mapped(intersect(gu, gv, rng.fork(), ro), t), p, tol.rho_loc);
  // Polar points off the curve also attract a perturbed solution each.
  ro.cluster_radius = tol.rho_c;
  const auto polar =
      mapped(intersect(partial(ht, static_cast<Var>(u)), partial(ht, static_cast<Var>(v)), rng.fork(), ro), t);
  return perturbed - count_off_curve(polar, normalized(h), p, tol.rho_loc);
}

int milnor_once(const ExactForm& h, const ProjPoint& p, std::uint64_t seed, const Tolerances& tol) {
  Rng rng(seed);
  const ExactTransform t = random_integer_transform(rng.fork());
  const ExactForm ht = normalized(clp::apply(t, h));
  const ProjPoint pt = map_point(to_floating(t).inverse(), p);
  const auto [u, v] = other_axes(pt.chart());
  const ExactForm wpow = power(ExactForm::variable(static_cast<Var>(pt.chart())), h.degree() - 1);
  const QComplex eps(mpq_class(tol.epsilon) * mpq_class(max_coeff(to_floating(ht))));
  const ExactForm gu = partial(ht, static_cast<Var>(u)) - wpow * (eps * random_unit_rational(rng));
  const ExactForm gv = partial(ht, static_cast<Var>(v)) - wpow * (eps * random_unit_rational(rng));
  const Transform tf = to_floating(t);
  const int perturbed = count_near(mapped(intersect(gu, gv, rng.fork()), tf), p, tol.rho_loc);
  const auto polar = mapped(intersect(partial(ht, static_cast<Var>(u)), partial(ht, static_cast<Var>(v)), rng.fork()), tf);
  return perturbed - count_off_curve(polar, normalized(to_floating(h)), p, tol.rho_loc);
}

template <class F>
int milnor_checked(const F& h, const ProjPoint& p, std::uint64_t seed, const Tolerances& tol) {
  if (h.degree() < 2) throw Error(Errc::NonIsolated, "no singular points on a line");
  int first = -1;
  for (int attempt = 0; attempt < 3; ++attempt) {
    int a = 0, b = 0;
    try {
      a = milnor_once(h, p, mix_seed(seed, 2 * attempt), tol);
      b = milnor_once(h, p, mix_seed(seed, 2 * attempt + 1), tol);
    } catch (const Error& e) {
      if (e.code() == Errc::SharedComponent) throw Error(Errc::NonIsolated, "gradient has a common component");
      if (e.code() != Errc::LiftFailure && e.code() != Errc::NonConvergence) throw;
      continue;
    }
    if (a == b && a > 0) return a;
    first = a;
  }
  throw Error(Errc::NonIsolated, "perturbed gradient counts disagree (last " + std::to_string(first) + ")");
}

}  // namespace

int local_intersection(const Form& f1, const Form& f2, const ProjPoint& p, std::uint64_t seed,
                       const Tolerances& tol) {
  RootOptions ro;
  ro.cluster_radius = tol.rho_c;
  return count_near(intersect(f1, f2, seed, ro), p, tol.rho_loc);
}

int local_intersection(const ExactForm& f1, const ExactForm& f2, const ProjPoint& p, std::uint64_t seed,
                       const Tolerances& tol) {
  return count_near(intersect(f1, f2, seed), p, tol.rho_loc);
}

int milnor_number(const Form& h, const ProjPoint& p, std::uint64_t seed, const Tolerances& tol) {
  return milnor_checked(h, p, seed, tol);
}

int milnor_number(const ExactForm& h, const ProjPoint& p, std::uint64_t seed, const Tolerances& tol) {
  return milnor_checked(h, p, seed, tol);
}

std::vector<IntersectionPoint> polar_points(const ExactForm& h, const ProjPoint& p, std::uint64_t seed) {
  if (h.degree() < 2) throw Error(Errc::NonIsolated, "no singular points on a line");
  const ExactTransform t = random_integer_transform(seed);
  const ExactForm ht = clp::apply(t, h);
  const ProjPoint pt = map_point(to_floating(t).inverse(), p);
  const auto [u, v] = other_axes(pt.chart());
  try {
    return mapped(intersect(partial(ht, static_cast<Var>(u)), partial(ht, static_cast<Var>(v)), mix_seed(seed, 1)),
                  to_floating(t));
  } catch (const Error& e) {
    if (e.code() == Errc::SharedComponent) throw Error(Errc::NonIsolated, "partials share a component");
    throw;
  }
}

int milnor_polar(const ExactForm& h, const ProjPoint& p, std::uint64_t seed, const Tolerances& tol) {
  const auto polar = polar_points(h, p, seed);
  const Form hf = normalized(to_floating(h));
  return count_near(polar, p, tol.rho_loc) - count_off_curve(polar, hf, p, tol.rho_loc);
}

int branch_count(const Decomposition& dec, const ProjPoint& p, double tol) {
  int r = 0;
  for (const auto& c : dec.components()) r += relative_value(c, p) <= tol ? 1 : 0;
  return r;
}

int delta_invariant(const Decomposition& dec, const ProjPoint& p, std::uint64_t seed, const Tolerances& tol) {
  const auto comps = dec.components();
  std::vector<int> through;
  for (int i = 0; i < static_cast<int>(comps.size()); ++i)
    if (relative_value(comps[i], p) <= 1e-6) through.push_back(i);
  int delta = 0;
  for (std::size_t a = 0; a < through.size(); ++a)
    for (std::size_t b = a + 1; b < through.size(); ++b) {
      const int i = through[a], j = through[b];
      if (comps[i].degree() == 1 && comps[j].degree() == 1) {
        ++delta;
        continue;
      }
      delta += local_intersection(comps[i], comps[j], p, mix_seed(seed, static_cast<std::uint64_t>(i * 17 + j)), tol);
    }
  return delta;
}

int euler_conic_line(const Decomposition& dec, std::span<const LocalSingularity> sing) {
  int e = 2 * dec.component_count();
  for (const auto& s : sing) e -= s.branches - 1;
  return e;
}

int euler_fiber(int d, std::span<const int> milnor) {
  int e = 3 * d - d * d;
  for (int m : milnor) e += m;
  return e;
}

int node_count_general_position(int d, int q) {
  if (q < 0 || q > d / 2) throw Error(Errc::BadParameter, "conic count out of range");
  return d * (d - 1) / 2 - q;
}

Ledger global_ledger(std::span<const LedgerEntry> fibers, int d) {
  Ledger l;
  l.degree = d;
  l.e_surface = 3 + d * d;
  l.e_generic = 3 * d - d * d;
  l.genus = (d - 1) * (d - 2) / 2;
  l.fibers.assign(fibers.begin(), fibers.end());
  int excess = 0;
  for (const auto& f : fibers) excess += f.euler - l.e_generic;
  l.balance = l.e_surface - 2 * l.e_generic - excess;
  return l;
}

}  // namespace clp
