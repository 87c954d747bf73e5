#include "clp/pencil.hpp"

#include <algorithm>

#include <Eigen/Dense>

#include "clp/rng.hpp"

namespace clp {

namespace {

std::array<Complex, 3> gradient(const Form& f, const ProjPoint& p) {
  const auto d = partials(f);
  return {evaluate(d[0], p), evaluate(d[1], p), evaluate(d[2], p)};
}

double norm3(const std::array<Complex, 3>& v) {
  return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
}

/// |grad f x grad g| / (|grad f| |grad g|); zero when the gradients are parallel.
double gradient_sine(const Form& f, const Form& g, const ProjPoint& p) {
  const auto a = gradient(f, p), b = gradient(g, p);
  const std::array<Complex, 3> c{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  const double na = norm3(a), nb = norm3(b);
  if (na == 0 || nb == 0) return 0;
  return norm3(c) / (na * nb);
}

std::optional<ExactPair> rationalize_param(const ProjPair& param) {
  ExactPair out;
  for (int k = 0; k < 2; ++k)
    if (!rationalize(param[k], 1000000, 1e-12, out[k])) return std::nullopt;
  return out;
}

ProjPair mean_param(const std::vector<ProjPair>& ps) {
  const int chart = std::abs(ps.front()[1]) >= std::abs(ps.front()[0]) ? 1 : 0;
  std::array<Complex, 2> acc{};
  for (const auto& p : ps) {
    const Complex s = p[chart];
    acc[0] += p[0] / s;
    acc[1] += p[1] / s;
  }
  // Round-off far below the cluster radius is dropped so exact values read as such.
  const ProjPair n = normalize_pair(acc);
  ProjPair out;
  for (int k = 0; k < 2; ++k) {
    const double re = std::abs(n[k].real()) < 1e-14 ? 0.0 : n[k].real();
    const double im = std::abs(n[k].imag()) < 1e-14 ? 0.0 : n[k].imag();
    out[k] = Complex(re, im);
  }
  return out;
}

/// Exact solving leaves parameters accurate far below rho_c, and distinct critical
/// values can be closer than rho_c.
double param_radius(const Tolerances& tol) { return tol.rho_c * 1e-3; }

ExactPair binary_param(const ProjPair& param) {
  ExactPair out;
  for (int k = 0; k < 2; ++k) out[k] = QComplex(mpq_class(param[k].real()), mpq_class(param[k].imag()));
  return out;
}

}  // namespace

int SingularFiber::milnor_total() const {
  int t = 0;
  for (const auto& s : singular_points) t += s.milnor;
  return t;
}

bool param_less(const ProjPair& a, const ProjPair& b) {
  const auto key = [](const ProjPair& p) {
    return std::array<double, 4>{p[0].real(), p[0].imag(), p[1].real(), p[1].imag()};
  };
  return key(a) < key(b);
}

Pencil make_pencil(const ExactForm& f, const ExactForm& g, std::uint64_t seed, const Tolerances& tol) {
  if (f.is_zero() || g.is_zero()) throw Error(Errc::ZeroForm, "pencil generator is the zero form");
  if (f.degree() != g.degree())
    throw Error(Errc::DegreeMismatch, "generators have degrees " + std::to_string(f.degree()) + " and " +
                                          std::to_string(g.degree()));
  if (f.degree() < 2) throw Error(Errc::DegreeMismatch, "pencil degree must be at least 2");
  Pencil p;
  p.f = f;
  p.g = g;
  p.degree = f.degree();
  p.seed = seed;
  p.tol = tol;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const ExactTransform w = random_integer_transform(mix_seed(seed, 0x77 + static_cast<std::uint64_t>(attempt)));
    const auto e = resultant_eliminate(clp::apply(w, f), clp::apply(w, g), Var::Z);
    if (e.eliminant.is_zero()) {
      // Nonzero leading coefficients make a zero resultant mean a common factor.
      bool leading_ok = !e.degenerate;
      if (e.degenerate) {
        const ExactForm fw = clp::apply(w, f), gw = clp::apply(w, g);
        leading_ok = !fw.coeff(0, 0, f.degree()).is_zero() && !gw.coeff(0, 0, g.degree()).is_zero();
      }
      if (leading_ok) throw Error(Errc::CommonComponent, "generators share a common factor");
      continue;
    }
    if (e.degenerate) continue;
    p.working = w;
    return p;
  }
  throw Error(Errc::DegenerateEliminant, "no generic coordinates found for the pencil");
}

BaseLocus base_locus(const Pencil& p) {
  BaseLocus b;
  b.points = intersect(p.f, p.g, mix_seed(p.seed, 0xb5));
  b.count = static_cast<int>(b.points.size());
  const int d = p.degree;
  b.transverse = b.count == d * d;
  const Form ff = normalized(to_floating(p.f)), gf = normalized(to_floating(p.g));
  for (const auto& ip : b.points)
    if (ip.multiplicity != 1 || gradient_sine(ff, gf, ip.point) <= p.tol.tau) b.transverse = false;
  return b;
}

Form member(const Pencil& p, const ProjPair& param) {
  if (std::abs(param[0]) == 0 && std::abs(param[1]) == 0) throw Error(Errc::ZeroParam, "parameter [0:0]");
  const ProjPair n = normalize_pair(param);
  Form h = to_floating(p.f) * n[0] + to_floating(p.g) * n[1];
  if (h.is_zero()) throw Error(Errc::ZeroForm, "member vanishes identically");
  return normalized(h);
}

ExactForm member(const Pencil& p, const ExactPair& param) {
  if (param[0].is_zero() && param[1].is_zero()) throw Error(Errc::ZeroParam, "parameter [0:0]");
  return normalized(p.f * param[0] + p.g * param[1]);
}

std::vector<CriticalPoint> critical_points(const Pencil& p, const BaseLocus& base) {
  const Form ff = to_floating(p.f), gf = to_floating(p.g);
  for (int attempt = 0; attempt < 3; ++attempt) {
    const ExactTransform w =
        attempt == 0 ? p.working : random_integer_transform(mix_seed(p.seed, 0xc0 + static_cast<std::uint64_t>(attempt)));
    const auto df = partials(clp::apply(w, p.f));
    const auto dg = partials(clp::apply(w, p.g));
    const ExactForm m1 = df[0] * dg[1] - df[1] * dg[0];
    const ExactForm m2 = df[0] * dg[2] - df[2] * dg[0];
    const Form m3 = to_floating(df[1] * dg[2] - df[2] * dg[1]);
    std::vector<IntersectionPoint> pts, extra;
    try {
      pts = intersect(m1, m2, mix_seed(p.seed, 0xc1 + static_cast<std::uint64_t>(attempt)), true);
      extra = intersect(df[0], dg[0], mix_seed(p.seed, 0xc5 + static_cast<std::uint64_t>(attempt)), true);
    } catch (const Error& e) {
      if (e.code() != Errc::SharedComponent && e.code() != Errc::LiftFailure) throw;
      continue;
    }
    const Transform wf = to_floating(w);
    std::vector<CriticalPoint> out;
    for (auto ip : pts) {
      // Points with f_x = g_x = 0 solve the first two minors only.
      for (const auto& e : extra)
        if (chordal_distance(e.point, ip.point) <= p.tol.rho_c) ip.multiplicity -= e.multiplicity;
      if (ip.multiplicity <= 0) continue;
      if (relative_value(m3, ip.point) > p.tol.tau) continue;
      const ProjPoint q = map_point(wf, ip.point);
      const bool on_base = std::any_of(base.points.begin(), base.points.end(), [&](const IntersectionPoint& b) {
        return chordal_distance(b.point, q) <= p.tol.rho_c;
      });
      if (on_base) continue;
      CriticalPoint c;
      c.point = q;
      c.param = normalize_pair({evaluate(gf, q), -evaluate(ff, q)});
      c.multiplicity = ip.multiplicity;
      out.push_back(c);
    }
    // Group by parameter.
    int next = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].cluster >= 0) continue;
      out[i].cluster = next;
      for (std::size_t j = i + 1; j < out.size(); ++j)
        if (out[j].cluster < 0 && chordal_distance(out[i].param, out[j].param) <= param_radius(p.tol)) out[j].cluster = next;
      ++next;
    }
    return out;
  }
  throw Error(Errc::DegenerateEliminant, "critical locus is not finite (non-reduced member?)");
}

bool is_reduced(const ExactForm& h, std::uint64_t seed) {
  if (h.is_zero()) throw Error(Errc::ZeroForm, "reducedness of the zero form");
  if (h.degree() <= 1) return true;
  Rng rng(seed);
  int deficient = 0;
  for (int trial = 0; trial < 2; ++trial) {
    const ExactForm ht = clp::apply(random_integer_transform(rng.fork()), h);
    const QComplex x0(mpq_class(rng.uniform_int(-97, 97), rng.uniform_int(1, 13)));
    const ExactBinary slice =
        restrict_to_line(ht, std::array<QComplex, 3>{QComplex(0), QComplex(0), QComplex(1)},
                         std::array<QComplex, 3>{x0, QComplex(1), QComplex(0)});
    const QPoly poly(slice.coeffs().begin(), slice.coeffs().end());
    if (!is_squarefree(poly)) ++deficient;
  }
  return deficient < 2;
}

bool is_reduced(const Form& h, std::uint64_t seed) {
  if (h.is_zero()) throw Error(Errc::ZeroForm, "reducedness of the zero form");
  const int d = h.degree();
  if (d <= 1) return true;
  Rng rng(seed);
  int deficient = 0;
  for (int trial = 0; trial < 2; ++trial) {
    const Form ht = normalized(clp::apply(random_transform(rng.fork()), h));
    const Complex x0 = rng.complex_gaussian();
    const Binary slice = restrict_to_line(ht, ProjPoint(0.0, 0.0, 1.0), ProjPoint(x0, 1.0, 0.0));
    std::vector<Complex> a(slice.coeffs().begin(), slice.coeffs().end()), b(d);
    for (int k = 1; k <= d; ++k) b[k - 1] = static_cast<double>(k) * a[k];
    // Sylvester matrix of the slice and its derivative.
    const int n = 2 * d - 1;
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < d - 1; ++i)
      for (int k = 0; k <= d; ++k) s(i, i + k) = a[d - k];
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) s(d - 1 + i, i + k) = b[d - 1 - k];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(s);
    const auto& sv = svd.singularValues();
    if (sv(n - 1) <= 1e-10 * sv(0)) ++deficient;
  }
  return deficient < 2;
}

std::vector<SingularFiber> singular_members(const Pencil& p, const std::vector<CriticalPoint>& crit) {
  const Form ff = to_floating(p.f), gf = to_floating(p.g);
  int nclusters = 0;
  for (const auto& c : crit) nclusters = std::max(nclusters, c.cluster + 1);
  std::vector<SingularFiber> fibers;
  for (int k = 0; k < nclusters; ++k) {
    std::vector<const CriticalPoint*> members;
    std::vector<ProjPair> params;
    for (const auto& c : crit)
      if (c.cluster == k) {
        members.push_back(&c);
        params.push_back(c.param);
      }
    if (members.empty()) continue;
    SingularFiber fib;
    fib.param = mean_param(params);
    fib.form = member(p, fib.param);
    const auto rat = rationalize_param(fib.param);
    if (rat) fib.exact_form = member(p, *rat);
    const std::uint64_t fseed = mix_seed(p.seed, 0xf1 + static_cast<std::uint64_t>(k));

    fib.reduced = fib.exact_form ? is_reduced(*fib.exact_form, fseed) : is_reduced(fib.form, fseed);
    if (!fib.reduced) {
      fibers.push_back(std::move(fib));
      continue;
    }

    // The polar count is stable under tiny perturbation, so an irrational member is
    // replaced by the member at the binary value of its parameter.
    const ExactForm local = fib.exact_form ? *fib.exact_form : member(p, binary_param(fib.param));
    std::vector<ProjPoint> pts;
    for (const auto* c : members) pts.push_back(c->point);
    const auto clusters = cluster_points(pts, p.tol.rho_c);
    std::vector<Tolerances> local_tol;
    for (const auto& cl : clusters) {
      // Local counts must not reach a neighbouring singular point.
      Tolerances t = p.tol;
      for (const auto& other : clusters)
        if (&other != &cl)
          t.rho_loc = std::min(t.rho_loc, 0.5 * chordal_distance(cl.representative, other.representative));
      local_tol.push_back(t);
    }
    for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
      const auto& cl = clusters[ci];
      SingularPoint sp;
      sp.point = cl.representative;
      for (auto m : cl.members) sp.critical_multiplicity += members[m]->multiplicity;
      try {
        // Polar points count when they lie on this fiber, judged by their own parameter.
        for (const auto& q : polar_points(local, sp.point, mix_seed(fseed, 3))) {
          if (chordal_distance(q.point, sp.point) > local_tol[ci].rho_loc) continue;
          const ProjPair qp = normalize_pair({evaluate(gf, q.point), -evaluate(ff, q.point)});
          if (chordal_distance(qp, fib.param) <= param_radius(p.tol)) sp.milnor += q.multiplicity;
        }
      } catch (const Error& e) {
        if (e.code() != Errc::NonIsolated) throw;
        sp.milnor = 0;  // surfaced by the Milnor cross-check verdict
      }
      fib.singular_points.push_back(sp);
    }
    std::vector<int> mus;
    for (const auto& sp : fib.singular_points) mus.push_back(sp.milnor);
    fib.euler = euler_fiber(p.degree, mus);

    std::vector<ProjPoint> sing;
    for (const auto& sp : fib.singular_points) sing.push_back(sp.point);
    const Classification cls = detect_components(fib.form, sing, mix_seed(fseed, 5), p.tol, fib.exact_form);
    if (const auto* dec = std::get_if<Decomposition>(&cls)) {
      fib.special = true;
      fib.decomposition = *dec;
      std::vector<LocalSingularity> ls;
      for (std::size_t ci = 0; ci < fib.singular_points.size(); ++ci) {
        auto& sp = fib.singular_points[ci];
        sp.branches = branch_count(*dec, sp.point);
        sp.delta = delta_invariant(*dec, sp.point, mix_seed(fseed, 7), local_tol[ci]);
        ls.push_back({sp.point, sp.milnor, sp.branches, sp.delta});
      }
      fib.euler_conic_line = euler_conic_line(*dec, ls);
      if (rat && dec->certified) {
        fib.exact_param = rat;
        fib.param = normalize_pair({(*rat)[0].to_complex(), (*rat)[1].to_complex()});
      }
    } else {
      fib.remainder_degree = std::get<NotConicLine>(cls).remainder_degree;
    }
    fibers.push_back(std::move(fib));
  }
  std::sort(fibers.begin(), fibers.end(),
            [](const SingularFiber& a, const SingularFiber& b) { return param_less(a.param, b.param); });
  return fibers;
}

}  // namespace clp
