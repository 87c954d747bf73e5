#include "clp/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>

#include "clp/rng.hpp"

namespace clp {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

/// p(z), p'(z) and sum |c_i||z|^i by Horner.
void horner(std::span<const Complex> c, Complex z, Complex& p, Complex& dp, double& bound) {
  p = 0;
  dp = 0;
  bound = 0;
  const double az = std::abs(z);
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
    dp = dp * z + p;
    p = p * z + c[k];
    bound = bound * az + std::abs(c[k]);
  }
}

/// Newton ratio p/p' evaluated in the chart where it is stable, plus a flag
/// telling whether |p(z)| is within rounding of zero.
Complex newton_ratio(std::span<const Complex> c, Complex z, bool& at_noise_level) {
  const int n = static_cast<int>(c.size()) - 1;
  if (std::abs(z) <= 1.0) {
    Complex p, dp;
    double bound;
    horner(c, z, p, dp, bound);
    at_noise_level = std::abs(p) <= 4.0 * (n + 1) * kEps * bound;
    if (dp == Complex(0)) return at_noise_level ? Complex(0) : p;
    return p / dp;
  }
  // p(z) = z^n q(1/z) with q the reversed polynomial.
  std::vector<Complex> rev(c.rbegin(), c.rend());
  const Complex w = 1.0 / z;
  Complex q, dq;
  double bound;
  horner(rev, w, q, dq, bound);
  at_noise_level = std::abs(q) <= 4.0 * (n + 1) * kEps * bound;
  const Complex den = static_cast<double>(n) * q - w * dq;
  if (den == Complex(0)) return at_noise_level ? Complex(0) : z;
  return z * q / den;
}

/// log|p(z)| and log of its rounding-error bound, stable for large |z|.
void log_value(std::span<const Complex> c, Complex z, double& log_abs, double& log_err) {
  const int n = static_cast<int>(c.size()) - 1;
  Complex p, dp;
  double bound;
  double shift = 0;
  if (std::abs(z) <= 1.0) {
    horner(c, z, p, dp, bound);
  } else {
    std::vector<Complex> rev(c.rbegin(), c.rend());
    horner(rev, 1.0 / z, p, dp, bound);
    shift = n * std::log(std::abs(z));
  }
  log_abs = std::abs(p) > 0 ? std::log(std::abs(p)) + shift : -1e300;
  log_err = bound > 0 ? std::log(4.0 * (n + 1) * kEps * bound) + shift : -1e300;
}

/// Starting points on circles given by the upper convex hull of (k, log|c_k|).
std::vector<Complex> initial_guesses(std::span<const Complex> c) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<int> idx;
  std::vector<double> lg(n + 1);
  for (int k = 0; k <= n; ++k) lg[k] = std::abs(c[k]) > 0 ? std::log(std::abs(c[k])) : -1e300;
  for (int k = 0; k <= n; ++k) {
    if (lg[k] <= -1e299) continue;
    while (idx.size() >= 2) {
      const int i = idx[idx.size() - 2], j = idx.back();
      // Drop j when it lies on or below the segment from i to k.
      if ((lg[j] - lg[i]) * (k - i) <= (lg[k] - lg[i]) * (j - i))
        idx.pop_back();
      else
        break;
    }
    idx.push_back(k);
  }
  std::vector<Complex> out;
  out.reserve(n);
  const double offset = 0.4;
  for (std::size_t e = 0; e + 1 < idx.size(); ++e) {
    const int i = idx[e], j = idx[e + 1];
    const double u = std::exp((lg[i] - lg[j]) / (j - i));
    for (int q = 0; q < j - i; ++q) {
      const double ang = 2.0 * std::numbers::pi * q / (j - i) + 2.0 * std::numbers::pi * i / n + offset;
      out.push_back(std::polar(u, ang));
    }
  }
  return out;
}

/// B(a s + b t, c s + d t).
Binary mobius(const Binary& b, const std::array<Complex, 4>& m) {
  const int n = b.degree();
  const Binary ls(std::vector<Complex>{m[1], m[0]});
  const Binary lt(std::vector<Complex>{m[3], m[2]});
  std::vector<Binary> ps{Binary(std::vector<Complex>{1.0})}, pt{Binary(std::vector<Complex>{1.0})};
  for (int k = 1; k <= n; ++k) {
    ps.push_back(ps.back() * ls);
    pt.push_back(pt.back() * lt);
  }
  Binary out(n);
  for (int k = 0; k <= n; ++k) {
    if (b[k] == Complex(0)) continue;
    const Binary term = ps[k] * pt[n - k];
    for (int j = 0; j <= n; ++j) out[j] += b[k] * term[j];
  }
  return out;
}

struct RawRoot {
  ProjPair pair;  // normalized
  Complex z;      // affine value s/t (may be huge)
  bool infinite = false;
  double chordal_radius = 0;
};

std::vector<RootCluster> cluster_roots(const Binary& b, std::vector<RawRoot> roots, double rho) {
  UnionFind uf(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      const double dist = chordal_distance(roots[i].pair, roots[j].pair);
      if (dist <= std::max(rho, roots[i].chordal_radius + roots[j].chordal_radius)) uf.unite(i, j);
    }
  std::vector<std::vector<std::size_t>> groups(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) groups[uf.find(i)].push_back(i);
  const double bn = coeff_norm(b);
  std::vector<RootCluster> out;
  for (const auto& g : groups) {
    if (g.empty()) continue;
    // Average in whichever affine chart holds most members.
    int big = 0;
    for (auto i : g) big += (roots[i].infinite || std::abs(roots[i].z) > 1.0) ? 1 : 0;
    ProjPair rep;
    if (2 * big > static_cast<int>(g.size())) {
      Complex acc(0);
      for (auto i : g) acc += roots[i].infinite ? Complex(0) : 1.0 / roots[i].z;
      rep = normalize_pair({Complex(1.0), acc / static_cast<double>(g.size())});
    } else {
      Complex acc(0);
      for (auto i : g) acc += roots[i].z;
      rep = normalize_pair({acc / static_cast<double>(g.size()), Complex(1.0)});
    }
    RootCluster rc;
    rc.representative = rep;
    rc.multiplicity = static_cast<int>(g.size());
    for (auto i : g) rc.radius = std::max(rc.radius, chordal_distance(rep, roots[i].pair));
    rc.max_residual = bn > 0 ? std::abs(b(rep[0], rep[1])) / bn : 0.0;
    out.push_back(rc);
  }
  return out;
}

void sort_clusters(std::vector<RootCluster>& cl) {
  std::sort(cl.begin(), cl.end(), [](const RootCluster& a, const RootCluster& b) {
    const auto key = [](const RootCluster& r) {
      return std::array<double, 4>{r.representative[0].real(), r.representative[0].imag(),
                                   r.representative[1].real(), r.representative[1].imag()};
    };
    return key(a) < key(b);
  });
}

/// Roots of a binary form in one attempt (no Möbius retry); false on non-convergence.
bool solve_once(const Binary& b, int max_iterations, std::vector<RawRoot>& out) {
  const int n = b.degree();
  int top = n, bottom = 0;
  while (top >= 0 && b[top] == Complex(0)) --top;
  while (bottom <= top && b[bottom] == Complex(0)) ++bottom;
  out.clear();
  for (int k = top; k < n; ++k) out.push_back({{Complex(1), Complex(0)}, Complex(0), true, 0.0});
  for (int k = 0; k < bottom; ++k) out.push_back({{Complex(0), Complex(1)}, Complex(0), false, 0.0});
  if (top - bottom <= 0) return true;
  std::vector<Complex> c(b.coeffs().begin() + bottom, b.coeffs().begin() + top + 1);
  std::vector<Complex> z;
  const bool ok = aberth(c, z, max_iterations);
  if (!ok) return false;
  const int m = static_cast<int>(c.size()) - 1;
  const double log_lead = std::log(std::abs(c.back()));
  for (int k = 0; k < m; ++k) {
    double la, le;
    log_value(c, z[k], la, le);
    double lprod = log_lead;
    for (int j = 0; j < m; ++j)
      if (j != k) lprod += std::log(std::max(std::abs(z[k] - z[j]), 1e-300));
    const double num = std::max(la, le) + std::log1p(std::exp(-std::abs(la - le)));
    const double r = std::exp(std::log(static_cast<double>(m)) + num - lprod);
    const double cr = std::min(1.0, r / (1.0 + std::norm(z[k])));
    out.push_back({normalize_pair({z[k], Complex(1)}), z[k], false, cr});
  }
  return true;
}

}  // namespace

ProjPair normalize_pair(const ProjPair& p) {
  const int big = std::abs(p[1]) > std::abs(p[0]) ? 1 : 0;
  if (std::abs(p[big]) == 0.0) throw Error(Errc::BadParameter, "projective pair with both entries zero");
  ProjPair out{p[0] / p[big], p[1] / p[big]};
  out[big] = Complex(1.0);
  return out;
}

bool aberth(std::span<const Complex> coeffs, std::vector<Complex>& roots, int max_iterations) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n <= 0) {
    roots.clear();
    return true;
  }
  if (n == 1) {
    roots = {-coeffs[0] / coeffs[1]};
    return true;
  }
  if (static_cast<int>(roots.size()) != n) roots = initial_guesses(coeffs);
  std::vector<char> done(n, 0);
  int remaining = n;
  for (int it = 0; it < max_iterations && remaining > 0; ++it) {
    for (int k = 0; k < n; ++k) {
      if (done[k]) continue;
      bool noise = false;
      const Complex ratio = newton_ratio(coeffs, roots[k], noise);
      if (noise) {
        done[k] = 1;
        --remaining;
        continue;
      }
      Complex sum(0);
      for (int j = 0; j < n; ++j)
        if (j != k) {
          const Complex diff = roots[k] - roots[j];
          if (diff != Complex(0)) sum += 1.0 / diff;
        }
      const Complex step = ratio / (1.0 - ratio * sum);
      roots[k] -= step;
      if (std::abs(step) <= 2.0 * kEps * std::abs(roots[k])) {
        done[k] = 1;
        --remaining;
      }
    }
  }
  return remaining == 0;
}

std::vector<RootCluster> solve_binary(const Binary& b, const RootOptions& opts) {
  if (b.is_zero()) throw Error(Errc::ZeroForm, "solve_binary on the zero form");
  if (b.degree() == 0) return {};
  std::vector<RawRoot> raw;
  if (solve_once(b, opts.max_iterations, raw)) {
    auto cl = cluster_roots(b, std::move(raw), opts.cluster_radius);
    sort_clusters(cl);
    return cl;
  }
  Rng rng(opts.seed);
  for (int attempt = 0; attempt < opts.retries; ++attempt) {
    std::array<Complex, 4> m;
    do {
      for (auto& v : m) v = rng.complex_gaussian();
    } while (std::abs(m[0] * m[3] - m[1] * m[2]) < 0.3);
    const Binary moved = mobius(b, m);
    if (!solve_once(moved, opts.max_iterations, raw)) continue;
    for (auto& r : raw) {
      const ProjPair back{m[0] * r.pair[0] + m[1] * r.pair[1], m[2] * r.pair[0] + m[3] * r.pair[1]};
      r.pair = normalize_pair(back);
      r.infinite = r.pair[1] == Complex(0);
      r.z = r.infinite ? Complex(0) : r.pair[0] / r.pair[1];
      // The chordal radius is only approximately preserved by the chart change.
      r.chordal_radius *= 4.0;
    }
    auto cl = cluster_roots(b, std::move(raw), opts.cluster_radius);
    sort_clusters(cl);
    return cl;
  }
  throw Error(Errc::NonConvergence, "root iteration cap reached after Mobius retries");
}

// ---------------------------------------------------------------------------

void trim(QPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int degree(const QPoly& p) {
  for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k)
    if (!p[k].is_zero()) return k;
  return -1;
}

QPoly derivative(const QPoly& p) {
  if (p.size() <= 1) return {};
  QPoly out(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) out[k - 1] = p[k] * QComplex(static_cast<long>(k));
  trim(out);
  return out;
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  QPoly r = a;
  trim(r);
  QPoly bb = b;
  trim(bb);
  if (bb.empty()) throw Error(Errc::ZeroForm, "polynomial division by zero");
  const int db = static_cast<int>(bb.size()) - 1;
  if (static_cast<int>(r.size()) - 1 < db) return {QPoly{}, r};
  QPoly q(r.size() - bb.size() + 1);
  const QComplex lead = bb.back();
  const bool monic = lead == QComplex(1);
  for (int k = static_cast<int>(r.size()) - 1; k >= db; --k) {
    if (r[k].is_zero()) continue;
    const QComplex t = monic ? r[k] : r[k] / lead;
    q[k - db] = t;
    for (int j = 0; j <= db; ++j)
      if (!bb[j].is_zero()) r[k - db + j] -= t * bb[j];
  }
  r.resize(db);
  trim(r);
  trim(q);
  return {q, r};
}

namespace {
QPoly monic(QPoly p) {
  trim(p);
  if (p.empty()) return p;
  const QComplex lead = p.back();
  if (lead == QComplex(1)) return p;
  for (auto& c : p) c /= lead;
  return p;
}
}  // namespace

QPoly gcd(QPoly a, QPoly b) {
  a = monic(std::move(a));
  b = monic(std::move(b));
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    QPoly r = divmod(a, b).second;
    a = std::move(b);
    b = monic(std::move(r));
  }
  return a;
}

namespace {

/// Arithmetic modulo a prime p = 1 mod 4, where i maps to a square root of -1.
struct ModPrime {
  std::uint64_t p, sqrt_m1;

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mul(a, a))
      if (e & 1) r = mul(r, a);
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }

  std::optional<std::uint64_t> reduce(const mpq_class& q) const {
    const std::uint64_t d = mpz_fdiv_ui(q.get_den_mpz_t(), p);
    if (d == 0) return std::nullopt;
    return mul(mpz_fdiv_ui(q.get_num_mpz_t(), p), inv(d));
  }

  std::optional<std::uint64_t> reduce(const QComplex& c) const {
    const auto re = reduce(c.re()), im = reduce(c.im());
    if (!re || !im) return std::nullopt;
    return add(*re, mul(*im, sqrt_m1));
  }
};

using ModPoly = std::vector<std::uint64_t>;

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

/// Degree of gcd(a, b) over F_p; -1 when both vanish.
int gcd_degree(const ModPrime& m, ModPoly a, ModPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    const std::uint64_t lead_inv = m.inv(b.back());
    while (a.size() >= b.size()) {
      const std::uint64_t t = m.mul(a.back(), lead_inv);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = m.sub(a[shift + j], m.mul(t, b[j]));
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

/// True when a reduction modulo some prime proves p square-free; false means unknown.
bool squarefree_modular(const QPoly& p) {
  static constexpr ModPrime kPrimes[] = {{2305843009213693921ULL, 583529827753931384ULL},
                                         {2305843009213693693ULL, 966685122347009555ULL},
                                         {2305843009213693669ULL, 1015389886790033265ULL}};
  const int n = degree(p);
  for (const auto& m : kPrimes) {
    ModPoly a(n + 1);
    bool ok = true;
    for (int k = 0; k <= n && ok; ++k) {
      const auto r = m.reduce(p[k]);
      if (!r) ok = false;
      else a[k] = *r;
    }
    if (!ok || a[n] == 0) continue;
    ModPoly da(n);
    for (int k = 1; k <= n; ++k) da[k - 1] = m.mul(a[k], static_cast<std::uint64_t>(k) % m.p);
    if (gcd_degree(m, a, da) == 0) return true;
  }
  return false;
}

}  // namespace

bool is_squarefree(const QPoly& p0) {
  QPoly p = p0;
  trim(p);
  if (degree(p) <= 0) return true;
  if (squarefree_modular(p)) return true;
  return degree(gcd(p, derivative(p))) == 0;
}

std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& p0) {
  QPoly p = p0;
  trim(p);
  std::vector<std::pair<QPoly, int>> out;
  if (degree(p) <= 0) return out;
  if (squarefree_modular(p)) {
    out.emplace_back(monic(p), 1);
    return out;
  }
  const QPoly dp = derivative(p);
  const QPoly a0 = gcd(p, dp);
  QPoly b = divmod(p, a0).first;
  QPoly c = divmod(dp, a0).first;
  QPoly d = c;
  {
    const QPoly db = derivative(b);
    d.resize(std::max(d.size(), db.size()));
    for (std::size_t k = 0; k < db.size(); ++k) d[k] -= db[k];
    trim(d);
  }
  for (int i = 1; degree(b) > 0; ++i) {
    const QPoly a = gcd(b, d);
    b = divmod(b, a).first;
    c = divmod(d, a).first;
    const QPoly db = derivative(b);
    d = c;
    d.resize(std::max(d.size(), db.size()));
    for (std::size_t k = 0; k < db.size(); ++k) d[k] -= db[k];
    trim(d);
    if (degree(a) > 0) out.emplace_back(monic(a), i);
  }
  return out;
}

std::vector<Complex> to_scaled_floating(const QPoly& p) {
  auto log2_abs = [](const mpq_class& q) -> long {
    if (sgn(q) == 0) return std::numeric_limits<long>::min();
    return static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
  };
  long e = std::numeric_limits<long>::min();
  for (const auto& c : p) e = std::max({e, log2_abs(c.re()), log2_abs(c.im())});
  std::vector<Complex> out(p.size());
  if (e == std::numeric_limits<long>::min()) return out;
  for (std::size_t k = 0; k < p.size(); ++k) {
    mpq_class re = p[k].re(), im = p[k].im();
    if (e > 0) {
      mpq_div_2exp(re.get_mpq_t(), re.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
      mpq_div_2exp(im.get_mpq_t(), im.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    } else if (e < 0) {
      mpq_mul_2exp(re.get_mpq_t(), re.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
      mpq_mul_2exp(im.get_mpq_t(), im.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    }
    out[k] = Complex(re.get_d(), im.get_d());
  }
  return out;
}

namespace {

/// Complex number in extended precision.
struct MpComplex {
  mpf_class re, im;
  explicit MpComplex(mp_bitcnt_t bits) : re(0, bits), im(0, bits) {}
};

/// Simultaneous Aberth steps on an exact square-free factor in extended precision.
/// The repulsion term keeps approximations that start in one basin apart, which
/// plain Newton steps do not; close roots are then resolved beyond double precision.
void polish(const QPoly& factor, std::vector<Complex>& roots) {
  constexpr mp_bitcnt_t kBits = 256;
  const int n = static_cast<int>(factor.size()) - 1;
  if (n <= 0 || static_cast<int>(roots.size()) != n) return;

  // Coincident starting points would make the repulsion singular.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (std::abs(roots[i] - roots[j]) <= 1e-12 * std::max(1.0, std::abs(roots[i])))
        roots[i] += 1e-7 * std::max(1.0, std::abs(roots[i])) * std::polar(1.0, 0.7 + i);

  std::vector<mpf_class> cre(n + 1, mpf_class(0, kBits)), cim(n + 1, mpf_class(0, kBits));
  for (int k = 0; k <= n; ++k) {
    cre[k] = mpf_class(factor[k].re(), kBits);
    cim[k] = mpf_class(factor[k].im(), kBits);
  }
  std::vector<MpComplex> z(n, MpComplex(kBits));
  for (int i = 0; i < n; ++i) {
    z[i].re = roots[i].real();
    z[i].im = roots[i].imag();
  }
  MpComplex p(kBits), dp(kBits), sum(kBits), q(kBits), w(kBits);
  mpf_class t(0, kBits), den(0, kBits), dr(0, kBits), di(0, kBits);
  const mpf_class tiny("1e-60", kBits);

  for (int it = 0; it < 100; ++it) {
    bool moved = false;
    for (int i = 0; i < n; ++i) {
      // Horner for p and p'.
      p.re = 0, p.im = 0, dp.re = 0, dp.im = 0;
      for (int k = n; k >= 0; --k) {
        t = dp.re * z[i].re - dp.im * z[i].im + p.re;
        dp.im = dp.re * z[i].im + dp.im * z[i].re + p.im;
        dp.re = t;
        t = p.re * z[i].re - p.im * z[i].im + cre[k];
        p.im = p.re * z[i].im + p.im * z[i].re + cim[k];
        p.re = t;
      }
      if (sgn(p.re) == 0 && sgn(p.im) == 0) continue;
      den = dp.re * dp.re + dp.im * dp.im;
      if (sgn(den) == 0) continue;
      // q = p / p'
      q.re = (p.re * dp.re + p.im * dp.im) / den;
      q.im = (p.im * dp.re - p.re * dp.im) / den;
      sum.re = 0, sum.im = 0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        dr = z[i].re - z[j].re;
        di = z[i].im - z[j].im;
        den = dr * dr + di * di;
        if (sgn(den) == 0) continue;
        sum.re += dr / den;
        sum.im -= di / den;
      }
      // w = q / (1 - q * sum)
      dr = 1 - (q.re * sum.re - q.im * sum.im);
      di = -(q.re * sum.im + q.im * sum.re);
      den = dr * dr + di * di;
      if (sgn(den) == 0) continue;
      w.re = (q.re * dr + q.im * di) / den;
      w.im = (q.im * dr - q.re * di) / den;
      z[i].re -= w.re;
      z[i].im -= w.im;
      t = sqrt(w.re * w.re + w.im * w.im);
      den = sqrt(z[i].re * z[i].re + z[i].im * z[i].im);
      if (t > tiny * (den + 1)) moved = true;
    }
    if (!moved) break;
  }
  for (int i = 0; i < n; ++i) roots[i] = Complex(z[i].re.get_d(), z[i].im.get_d());
}

}  // namespace

std::vector<RootCluster> solve_binary(const ExactBinary& b, const RootOptions& opts) {
  if (b.is_zero()) throw Error(Errc::ZeroForm, "solve_binary on the zero form");
  const int n = b.degree();
  int top = n, bottom = 0;
  while (top >= 0 && b[top].is_zero()) --top;
  while (bottom <= top && b[bottom].is_zero()) ++bottom;

  const QPoly full(b.coeffs().begin(), b.coeffs().end());
  const Binary scaled(to_scaled_floating(full));
  const double bn = coeff_norm(scaled);

  std::vector<RootCluster> out;
  auto push = [&](const ProjPair& rep, int mult) {
    RootCluster rc;
    rc.representative = rep;
    rc.multiplicity = mult;
    rc.max_residual = bn > 0 ? std::abs(scaled(rep[0], rep[1])) / bn : 0.0;
    out.push_back(rc);
  };
  if (top < n) push({Complex(1), Complex(0)}, n - top);
  if (bottom > 0) push({Complex(0), Complex(1)}, bottom);

  const QPoly middle(b.coeffs().begin() + bottom, b.coeffs().begin() + top + 1);
  for (const auto& [factor, mult] : squarefree_decomposition(middle)) {
    std::vector<Complex> roots;
    if (degree(factor) == 1) {
      roots.push_back((-factor[0] / factor[1]).to_complex());
    } else {
      const std::vector<Complex> c = to_scaled_floating(factor);
      if (!aberth(c, roots, opts.max_iterations)) {
        // Square-free input; the cap can only be hit through severe
        // ill-conditioning.  Fall back to the clustered floating solver.
        for (const auto& rc : solve_binary(Binary(c), opts))
          for (int k = 0; k < rc.multiplicity; ++k)
            roots.push_back(rc.representative[1] == Complex(0) ? Complex(1e300)
                                                               : rc.representative[0] / rc.representative[1]);
      }
      polish(factor, roots);
    }
    for (const auto& z : roots) push(normalize_pair({z, Complex(1)}), mult);
  }
  sort_clusters(out);
  return out;
}

// ---------------------------------------------------------------------------

std::vector<PointCluster> cluster_points(std::span<const ProjPoint> pts, double radius) {
  if (!(radius > 0)) throw Error(Errc::BadParameter, "cluster radius must be positive");
  UnionFind uf(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (chordal_distance(pts[i], pts[j]) <= radius) uf.unite(i, j);
  std::vector<PointCluster> out;
  std::vector<long> slot(pts.size(), -1);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::size_t r = uf.find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(out.size());
      out.push_back({pts[i], {}});
    }
    out[slot[r]].members.push_back(i);
  }
  for (auto& c : out) {
    // Bring every member to the chart of the first member before averaging.
    const int chart = pts[c.members.front()].chart();
    std::array<Complex, 3> acc{};
    for (auto i : c.members) {
      const Complex s = pts[i][chart];
      for (int k = 0; k < 3; ++k) acc[k] += pts[i][k] / s;
    }
    c.representative = ProjPoint(acc);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

/// Pairs (x:y) shadows with (x:z) shadows of the same solution set.
bool match_projections(const Form& ff, const Form& gf, const std::vector<RootCluster>& rz,
                       const std::vector<RootCluster>& ry, std::vector<IntersectionPoint>& out) {
  if (rz.size() != ry.size()) return false;
  for (const auto& r : rz)
    if (std::abs(r.representative[0]) < 1e-3) return false;
  for (const auto& r : ry)
    if (std::abs(r.representative[0]) < 1e-3) return false;
  struct Cand {
    double residual;
    std::size_t i, j;
  };
  std::vector<Cand> cands;
  for (std::size_t i = 0; i < rz.size(); ++i)
    for (std::size_t j = 0; j < ry.size(); ++j) {
      if (rz[i].multiplicity != ry[j].multiplicity) continue;
      const Complex y = rz[i].representative[1] / rz[i].representative[0];
      const Complex z = ry[j].representative[1] / ry[j].representative[0];
      const ProjPoint v(Complex(1), y, z);
      cands.push_back({relative_value(ff, v) + relative_value(gf, v), i, j});
    }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    return a.residual < b.residual || (a.residual == b.residual && (a.i < b.i || (a.i == b.i && a.j < b.j)));
  });
  std::vector<char> used_i(rz.size(), 0), used_j(ry.size(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& c : cands) {
    if (used_i[c.i] || used_j[c.j]) continue;
    if (c.residual > 1e-6) return false;
    used_i[c.i] = used_j[c.j] = 1;
    pairs.emplace_back(c.i, c.j);
  }
  if (pairs.size() != rz.size()) return false;
  std::sort(pairs.begin(), pairs.end());
  out.clear();
  for (const auto& [i, j] : pairs) {
    const Complex y = rz[i].representative[1] / rz[i].representative[0];
    const Complex z = ry[j].representative[1] / ry[j].representative[0];
    out.push_back({ProjPoint(Complex(1), y, z), rz[i].multiplicity});
  }
  return true;
}

}  // namespace

std::vector<IntersectionPoint> intersect(const ExactForm& f, const ExactForm& g, std::uint64_t seed,
                                         bool caller_coordinates_generic) {
  if (f.is_zero() || g.is_zero()) throw Error(Errc::ZeroForm, "intersection with the zero form");
  const int expected = f.degree() * g.degree();
  int shared_votes = 0;
  constexpr int kAttempts = 10;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    const ExactTransform t = (attempt == 0 && caller_coordinates_generic)
                                 ? ExactTransform::identity()
                                 : random_integer_transform(mix_seed(seed, static_cast<std::uint64_t>(attempt)));
    const ExactForm ft = clp::apply(t, f), gt = clp::apply(t, g);
    const auto ez = resultant_eliminate(ft, gt, Var::Z);
    const bool leading_ok = !ft.coeff(0, 0, ft.degree()).is_zero() && !gt.coeff(0, 0, gt.degree()).is_zero();
    if (ez.eliminant.is_zero() && leading_ok) {
      if (++shared_votes >= 2) throw Error(Errc::SharedComponent, "curves share a component");
      continue;
    }
    if (ez.degenerate) continue;
    const auto ey = resultant_eliminate(ft, gt, Var::Y);
    if (ey.degenerate) continue;
    const auto rz = solve_binary(ez.eliminant);
    const auto ry = solve_binary(ey.eliminant);
    int sz = 0, sy = 0;
    for (const auto& r : rz) sz += r.multiplicity;
    for (const auto& r : ry) sy += r.multiplicity;
    if (sz != expected || sy != expected) continue;
    std::vector<IntersectionPoint> pts;
    if (!match_projections(normalized(to_floating(ft)), normalized(to_floating(gt)), rz, ry, pts)) continue;
    const Transform tf = to_floating(t);
    for (auto& p : pts) p.point = map_point(tf, p.point);
    return pts;
  }
  throw Error(Errc::LiftFailure, "no generic projection found for the intersection");
}

std::vector<IntersectionPoint> intersect(const Form& f, const Form& g, std::uint64_t seed,
                                         const RootOptions& opts) {
  if (f.is_zero() || g.is_zero()) throw Error(Errc::ZeroForm, "intersection with the zero form");
  int shared_votes = 0;
  constexpr int kAttempts = 4;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    const Transform t = random_transform(mix_seed(seed, static_cast<std::uint64_t>(attempt) + 101));
    const Form ft = normalized(clp::apply(t, f)), gt = normalized(clp::apply(t, g));
    const auto ez = resultant_eliminate(ft, gt, Var::Z);
    if (ez.degenerate) {
      if (++shared_votes >= 2) throw Error(Errc::SharedComponent, "curves share a component");
      continue;
    }
    RootOptions ro = opts;
    ro.seed = mix_seed(seed, 7 + static_cast<std::uint64_t>(attempt));
    std::vector<RootCluster> shadows;
    try {
      shadows = solve_binary(ez.eliminant, ro);
    } catch (const Error& e) {
      if (e.code() != Errc::NonConvergence) throw;
      continue;
    }
    // Lift each (x:y) shadow along the line through it and [0:0:1].
    std::vector<IntersectionPoint> pts;
    bool ok = true;
    for (const auto& sh : shadows) {
      const ProjPoint top(Complex(0), Complex(0), Complex(1));
      const ProjPoint base(sh.representative[0], sh.representative[1], Complex(0));
      const Binary slice = restrict_to_line(ft, top, base);
      if (slice.is_zero()) {
        ok = false;
        break;
      }
      double best = std::numeric_limits<double>::infinity();
      ProjPoint best_pt;
      for (const auto& c : solve_binary(slice, ro)) {
        std::array<Complex, 3> v;
        for (int k = 0; k < 3; ++k) v[k] = c.representative[0] * top[k] + c.representative[1] * base[k];
        const ProjPoint cand(v);
        const double r = relative_value(gt, cand);
        if (r < best) {
          best = r;
          best_pt = cand;
        }
      }
      if (!(best <= 1e-4) || relative_value(ft, best_pt) > 1e-4) {
        ok = false;
        break;
      }
      pts.push_back({best_pt, sh.multiplicity});
    }
    if (!ok) continue;
    for (auto& p : pts) p.point = map_point(t, p.point);
    return pts;
  }
  throw Error(Errc::LiftFailure, "numeric lifting failed");
}

}  // namespace clp
