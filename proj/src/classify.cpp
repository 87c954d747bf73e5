#include "clp/classify.hpp"

#include <algorithm>
#include <set>

#include <Eigen/Dense>

#include "clp/rng.hpp"
#include "clp/roots.hpp"

namespace clp {

namespace {

constexpr double kOnCurve = 1e-6;

std::array<Complex, 3> normalize3(std::array<Complex, 3> v) {
  int big = 0;
  for (int k = 1; k < 3; ++k)
    if (std::abs(v[k]) > std::abs(v[big])) big = k;
  const Complex s = v[big];
  for (auto& c : v) c /= s;
  v[big] = 1.0;
  return v;
}

Form line_form(const std::array<Complex, 3>& c) {
  Form f(1);
  for (int k = 0; k < 3; ++k) f[k] = c[k];
  return f;
}

ProjPoint random_point(Rng& rng) {
  return ProjPoint(rng.complex_gaussian(), rng.complex_gaussian(), rng.complex_gaussian());
}

/// Two points spanning the line a x + b y + c z = 0.
std::pair<ProjPoint, ProjPoint> points_on_line(const std::array<Complex, 3>& l) {
  // Cross with the two coordinate axes least aligned with l.
  int big = 0;
  for (int k = 1; k < 3; ++k)
    if (std::abs(l[k]) > std::abs(l[big])) big = k;
  std::array<std::array<Complex, 3>, 2> out;
  int n = 0;
  for (int k = 0; k < 3 && n < 2; ++k) {
    if (k == big) continue;
    std::array<Complex, 3> e{};
    e[k] = 1.0;
    // point = l x e
    out[n++] = {l[1] * e[2] - l[2] * e[1], l[2] * e[0] - l[0] * e[2], l[0] * e[1] - l[1] * e[0]};
  }
  return {ProjPoint(out[0]), ProjPoint(out[1])};
}

/// Cheap rejection: the candidate line must carry three zeros of h.
bool line_prefilter(const Form& h, const std::array<Complex, 3>& l) {
  const auto [p, q] = points_on_line(l);
  static constexpr double ts[3] = {0.3141, -1.732, 2.718};
  for (double t : ts) {
    std::array<Complex, 3> v;
    for (int k = 0; k < 3; ++k) v[k] = p[k] + Complex(t, 0.5 * t) * q[k];
    if (relative_value(h, ProjPoint(v)) > kOnCurve) return false;
  }
  return true;
}

Form conic_through(std::span<const ProjPoint> pts) {
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(pts.size()), 6);
  for (std::size_t r = 0; r < pts.size(); ++r) {
    const auto& p = pts[r];
    a(r, 0) = p[0] * p[0];
    a(r, 1) = p[0] * p[1];
    a(r, 2) = p[0] * p[2];
    a(r, 3) = p[1] * p[1];
    a(r, 4) = p[1] * p[2];
    a(r, 5) = p[2] * p[2];
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  Form q(2);
  for (int k = 0; k < 6; ++k) q[k] = svd.matrixV()(k, 5);
  return normalized(q);
}

Complex det3(const std::array<std::array<Complex, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// Lines of a degenerate conic, through its singular point.
std::vector<LineFactor> split_conic(const ConicFactor& c, Rng& rng) {
  Eigen::Matrix3cd m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = c.sym[i][j];
  Eigen::JacobiSVD<Eigen::Matrix3cd> svd(m, Eigen::ComputeFullV);
  const ProjPoint s(svd.matrixV()(0, 2), svd.matrixV()(1, 2), svd.matrixV()(2, 2));
  const Form q = c.form();
  ProjPoint a = random_point(rng), b = random_point(rng);
  const auto roots = solve_binary(restrict_to_line(q, a, b));
  std::vector<LineFactor> out;
  for (const auto& r : roots) {
    std::array<Complex, 3> v;
    for (int k = 0; k < 3; ++k) v[k] = r.representative[0] * a[k] + r.representative[1] * b[k];
    LineFactor l;
    l.coeffs = line_through(s, ProjPoint(v));
    l.multiplicity = r.multiplicity * c.multiplicity;
    out.push_back(l);
  }
  return out;
}

bool conic_is_degenerate(const ConicFactor& c, double tol) {
  return std::abs(det3(c.sym)) <= tol;
}

/// Divides `rem` by `factor` as often as the residual allows; returns the count.
int deflate(Form& rem, const Form& factor, double tol_div) {
  int mult = 0;
  while (rem.degree() >= factor.degree()) {
    const auto r = least_squares_divide(rem, factor);
    if (r.residual > tol_div) break;
    rem = normalized(r.quotient);
    ++mult;
  }
  return mult;
}

struct Candidate {
  double residual;
  Form factor;
};

void add_candidate(std::vector<Candidate>& cands, const Form& rem, const Form& factor, double tol_div) {
  for (const auto& c : cands)
    if (projective_form_distance(c.factor, factor) < 1e-6) return;
  const auto r = least_squares_divide(rem, factor);
  if (r.residual <= tol_div) cands.push_back({r.residual, factor});
}

std::optional<Form> best_candidate(std::vector<Candidate>& cands) {
  if (cands.empty()) return std::nullopt;
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& a, const Candidate& b) { return a.residual < b.residual; });
  return cands.front().factor;
}

std::optional<std::array<QComplex, 3>> rationalize_line(const std::array<Complex, 3>& c) {
  std::array<QComplex, 3> out;
  for (int k = 0; k < 3; ++k)
    if (!rationalize(c[k], 1000000, 1e-9, out[k])) return std::nullopt;
  return out;
}

std::optional<ExactForm> rationalize_form(const Form& f) {
  ExactForm out(f.degree());
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!rationalize(f[i], 1000000, 1e-9, out[i])) return std::nullopt;
  return out;
}

void certify(Decomposition& dec, const ExactForm& h) {
  ExactForm rem = h;
  for (auto& l : dec.lines) {
    l.exact = rationalize_line(l.coeffs);
    if (!l.exact) return;
    ExactForm lf(1);
    for (int k = 0; k < 3; ++k) lf[k] = (*l.exact)[k];
    for (int m = 0; m < l.multiplicity; ++m) {
      auto q = exact_divide(rem, lf);
      if (!q) return;
      rem = *q;
    }
  }
  for (auto& c : dec.conics) {
    c.exact = rationalize_form(c.form());
    if (!c.exact) return;
    for (int m = 0; m < c.multiplicity; ++m) {
      auto q = exact_divide(rem, *c.exact);
      if (!q) return;
      rem = *q;
    }
  }
  dec.certified = rem.degree() == 0 && !rem.is_zero();
}

}  // namespace

Form LineFactor::form() const { return line_form(coeffs); }

Form ConicFactor::form() const {
  Form q(2);
  q.coeff(2, 0, 0) = sym[0][0];
  q.coeff(1, 1, 0) = 2.0 * sym[0][1];
  q.coeff(1, 0, 1) = 2.0 * sym[0][2];
  q.coeff(0, 2, 0) = sym[1][1];
  q.coeff(0, 1, 1) = 2.0 * sym[1][2];
  q.coeff(0, 0, 2) = sym[2][2];
  return q;
}

ConicFactor ConicFactor::from_form(const Form& q0) {
  ConicFactor c;
  std::array<std::array<Complex, 3>, 3> s{};
  s[0][0] = q0.coeff(2, 0, 0);
  s[1][1] = q0.coeff(0, 2, 0);
  s[2][2] = q0.coeff(0, 0, 2);
  s[0][1] = s[1][0] = 0.5 * q0.coeff(1, 1, 0);
  s[0][2] = s[2][0] = 0.5 * q0.coeff(1, 0, 1);
  s[1][2] = s[2][1] = 0.5 * q0.coeff(0, 1, 1);
  double big = 0;
  Complex scale = 1.0;
  for (const auto& row : s)
    for (const auto& v : row)
      if (std::abs(v) > big) {
        big = std::abs(v);
        scale = v;
      }
  for (auto& row : s)
    for (auto& v : row) v /= scale;
  c.sym = s;
  return c;
}

std::vector<Form> Decomposition::components() const {
  std::vector<Form> out;
  for (const auto& l : lines) out.push_back(l.form());
  for (const auto& c : conics) out.push_back(c.form());
  return out;
}

std::array<Complex, 3> line_through(const ProjPoint& p, const ProjPoint& q) {
  return normalize3({p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]});
}

std::vector<ProjPoint> sample_curve_points(const Form& h, int n, std::uint64_t seed) {
  if (h.is_zero()) throw Error(Errc::ZeroForm, "sampling the zero curve");
  Rng rng(seed);
  std::vector<ProjPoint> out;
  for (int k = 0; k < n; ++k) {
    const ProjPoint a = random_point(rng), b = random_point(rng);
    const Binary r = restrict_to_line(h, a, b);
    if (r.is_zero()) continue;
    for (const auto& c : solve_binary(r)) {
      std::array<Complex, 3> v;
      for (int i = 0; i < 3; ++i) v[i] = c.representative[0] * a[i] + c.representative[1] * b[i];
      for (int m = 0; m < c.multiplicity; ++m) out.emplace_back(v);
    }
  }
  return out;
}

std::optional<ProjPoint> concurrency(std::span<const LineFactor> lines, double tol) {
  if (lines.size() < 2) return std::nullopt;
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(lines.size()), 3);
  for (std::size_t r = 0; r < lines.size(); ++r) {
    const auto c = normalize3(lines[r].coeffs);
    for (int k = 0; k < 3; ++k) m(r, k) = c[k];
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (lines.size() >= 3 && sv(2) > tol * sv(0)) return std::nullopt;
  const auto& v = svd.matrixV();
  return ProjPoint(v(0, 2), v(1, 2), v(2, 2));
}

bool general_position(const Decomposition& dec, std::uint64_t seed, const Tolerances& tol) {
  const auto comps = dec.components();
  const int nl = static_cast<int>(dec.lines.size());
  for (const auto& l : dec.lines)
    if (l.multiplicity > 1) return false;
  for (const auto& c : dec.conics)
    if (c.multiplicity > 1) return false;
  struct Hit {
    ProjPoint point;
    int i, j;
  };
  std::vector<Hit> hits;
  for (int i = 0; i < static_cast<int>(comps.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(comps.size()); ++j) {
      if (i < nl && j < nl) {
        const auto& a = dec.lines[i].coeffs;
        const auto& b = dec.lines[j].coeffs;
        const std::array<Complex, 3> x{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                                       a[0] * b[1] - a[1] * b[0]};
        if (std::abs(x[0]) + std::abs(x[1]) + std::abs(x[2]) < 1e-12) return false;
        hits.push_back({ProjPoint(x), i, j});
      } else if (i < nl) {
        const auto [p, q] = points_on_line(dec.lines[i].coeffs);
        for (const auto& r : solve_binary(restrict_to_line(comps[j], p, q))) {
          if (r.multiplicity > 1) return false;
          std::array<Complex, 3> v;
          for (int k = 0; k < 3; ++k) v[k] = r.representative[0] * p[k] + r.representative[1] * q[k];
          hits.push_back({ProjPoint(v), i, j});
        }
      } else {
        RootOptions ro;
        ro.cluster_radius = tol.rho_c;
        for (const auto& ip : intersect(comps[i], comps[j], mix_seed(seed, static_cast<std::uint64_t>(i * 31 + j)), ro)) {
          if (ip.multiplicity > 1) return false;
          hits.push_back({ip.point, i, j});
        }
      }
    }
  std::vector<ProjPoint> pts;
  for (const auto& h : hits) pts.push_back(h.point);
  for (const auto& cl : cluster_points(pts, tol.rho_c)) {
    std::set<int> through;
    for (auto m : cl.members) {
      through.insert(hits[m].i);
      through.insert(hits[m].j);
    }
    if (through.size() >= 3) return false;
  }
  return true;
}

Classification detect_components(const Form& h0, std::span<const ProjPoint> singular_pts, std::uint64_t seed,
                                 const Tolerances& tol, const std::optional<ExactForm>& exact) {
  if (h0.is_zero()) throw Error(Errc::ZeroForm, "classifying the zero form");
  const int d = h0.degree();
  Rng rng(seed);
  Form rem = normalized(h0);
  const std::vector<ProjPoint> samples = sample_curve_points(rem, 20, rng.fork());

  std::vector<LineFactor> lines;
  std::vector<ConicFactor> conics;
  auto accept_line = [&](const std::array<Complex, 3>& c) {
    LineFactor l;
    l.coeffs = normalize3(c);
    l.multiplicity = std::max(1, deflate(rem, l.form(), tol.tau_div));
    lines.push_back(l);
  };
  auto accept_conic = [&](const Form& q) {
    ConicFactor c = ConicFactor::from_form(q);
    if (conic_is_degenerate(c, tol.tau)) {
      for (auto& l : split_conic(c, rng)) accept_line(l.coeffs);
      return;
    }
    c.multiplicity = std::max(1, deflate(rem, c.form(), tol.tau_div));
    conics.push_back(c);
  };

  while (rem.degree() > 0) {
    if (rem.degree() == 1) {
      accept_line({rem[0], rem[1], rem[2]});
      break;
    }
    if (rem.degree() == 2) {
      accept_conic(rem);
      break;
    }
    // Lines: pairs of singular points first, then pairs of samples.
    std::vector<Candidate> cands;
    std::vector<ProjPoint> sing_on, samp_on;
    for (const auto& p : singular_pts)
      if (relative_value(rem, p) <= kOnCurve) sing_on.push_back(p);
    for (const auto& p : samples)
      if (relative_value(rem, p) <= kOnCurve) samp_on.push_back(p);
    auto scan_pairs = [&](const std::vector<ProjPoint>& a, const std::vector<ProjPoint>& b, bool same) {
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = same ? i + 1 : 0; j < b.size(); ++j) {
          if (chordal_distance(a[i], b[j]) < 1e-6) continue;
          const auto l = line_through(a[i], b[j]);
          if (line_prefilter(rem, l)) add_candidate(cands, rem, line_form(l), tol.tau_div);
        }
    };
    scan_pairs(sing_on, sing_on, true);
    if (cands.empty()) scan_pairs(samp_on, samp_on, true);
    if (auto best = best_candidate(cands)) {
      accept_line({(*best)[0], (*best)[1], (*best)[2]});
      continue;
    }
    // Conics through 5-point subsets of the samples still on the remainder.
    if (samp_on.size() >= 6) {
      const long n = static_cast<long>(samp_on.size());
      for (int trial = 0; trial < 400 && cands.empty(); ++trial) {
        std::vector<long> idx;
        while (idx.size() < 5) {
          const long k = rng.uniform_int(0, n - 1);
          if (std::find(idx.begin(), idx.end(), k) == idx.end()) idx.push_back(k);
        }
        std::vector<ProjPoint> five;
        for (long k : idx) five.push_back(samp_on[k]);
        const Form q = conic_through(five);
        int support = 0;
        for (const auto& p : samp_on) support += relative_value(q, p) <= kOnCurve ? 1 : 0;
        if (support < 7) continue;
        add_candidate(cands, rem, q, tol.tau_div);
      }
    }
    if (auto best = best_candidate(cands)) {
      accept_conic(*best);
      continue;
    }
    return NotConicLine{rem.degree(), lines, conics};
  }

  Decomposition dec;
  // Merge lines found twice (e.g. from a split conic).
  std::vector<LineFactor> merged;
  for (const auto& l : lines) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const LineFactor& m) {
      return projective_form_distance(m.form(), l.form()) < 1e-6;
    });
    if (it != merged.end())
      it->multiplicity += l.multiplicity;
    else
      merged.push_back(l);
  }
  dec.lines = std::move(merged);
  dec.conics = std::move(conics);
  for (const auto& c : dec.conics) dec.q += c.multiplicity;
  int line_degree = 0;
  for (const auto& l : dec.lines) line_degree += l.multiplicity;
  if (line_degree == d && dec.lines.size() >= 2) dec.concurrent_point = concurrency(dec.lines);
  dec.general_position = general_position(dec, mix_seed(seed, 0x6e9), tol);
  if (exact) certify(dec, normalized(*exact));
  return dec;
}

}  // namespace clp
