#include "clp/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>

namespace clp {

namespace {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  // Avoid "-0.000" so identical geometry always prints identically.
  if (std::string(buf) == "-0.000") return "0.000";
  return buf;
}

std::optional<Vec3> real_vector(const std::array<Complex, 3>& c) {
  // Coefficients are stored with the largest entry equal to 1, so a real curve has real entries.
  Vec3 v;
  for (int k = 0; k < 3; ++k) {
    if (std::abs(c[k].imag()) > 1e-9) return std::nullopt;
    v[k] = c[k].real();
  }
  return v;
}

std::optional<Mat3> real_matrix(const std::array<std::array<Complex, 3>, 3>& s) {
  Mat3 m;
  for (int a = 0; a < 3; ++a) {
    const auto row = real_vector(s[a]);
    if (!row) return std::nullopt;
    m[a] = *row;
  }
  return m;
}

double bilinear(const Mat3& s, const Vec3& u, const Vec3& v) {
  double acc = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) acc += u[a] * s[a][b] * v[b];
  return acc;
}

/// A real point of the conic, found on lines through [0:0:1].
std::optional<Vec3> real_point(const Mat3& s) {
  const Vec3 a{0, 0, 1};
  for (int k = 0; k < 720; ++k) {
    const double th = std::numbers::pi * k / 720.0;
    const Vec3 b{std::cos(th), std::sin(th), 0};
    const double qa = bilinear(s, a, a), qb = bilinear(s, b, b), ab = bilinear(s, a, b);
    // qa s^2 + 2 ab s t + qb t^2 = 0
    if (std::abs(qb) > 1e-14) {
      const double disc = ab * ab - qa * qb;
      if (disc < 0) continue;
      const double t = (-ab + std::sqrt(disc)) / qb;  // s = 1
      return Vec3{a[0] + t * b[0], a[1] + t * b[1], a[2] + t * b[2]};
    }
    if (std::abs(ab) > 1e-14) {
      const double t = -qa / (2 * ab);
      return Vec3{a[0] + t * b[0], a[1] + t * b[1], a[2] + t * b[2]};
    }
    return b;  // the whole direction lies on the conic
  }
  return std::nullopt;
}

class Canvas {
 public:
  Canvas(double w, int px) : w_(w), px_(px) {}

  double sx(double x) const { return (x + w_) / (2 * w_) * px_; }
  double sy(double y) const { return (w_ - y) / (2 * w_) * px_; }

  /// Segment of a x + b y + c = 0 inside the window, if any.
  std::optional<std::string> line(const Vec3& l) const {
    const double a = l[0], b = l[1], c = l[2];
    const double n2 = a * a + b * b;
    if (n2 < 1e-24) return std::nullopt;  // the line at infinity
    const double p0x = -c * a / n2, p0y = -c * b / n2;
    const double n = std::sqrt(n2);
    const double dx = -b / n, dy = a / n;
    double t0 = -1e300, t1 = 1e300;
    auto slab = [&](double p, double d) {
      if (std::abs(d) < 1e-15) return std::abs(p) <= w_;
      double lo = (-w_ - p) / d, hi = (w_ - p) / d;
      if (lo > hi) std::swap(lo, hi);
      t0 = std::max(t0, lo);
      t1 = std::min(t1, hi);
      return true;
    };
    if (!slab(p0x, dx) || !slab(p0y, dy) || t0 >= t1) return std::nullopt;
    return "M" + fmt(sx(p0x + t0 * dx)) + " " + fmt(sy(p0y + t0 * dy)) + " L" + fmt(sx(p0x + t1 * dx)) + " " +
           fmt(sy(p0y + t1 * dy));
  }

  /// Polyline through the real points of the conic; empty when none is visible.
  std::string conic(const Mat3& s, const Vec3& p0, int steps) const {
    // Orthonormal basis u1, u2 of the plane orthogonal to p0: a line of CP^2 missing p0.
    const double np = std::sqrt(p0[0] * p0[0] + p0[1] * p0[1] + p0[2] * p0[2]);
    const Vec3 p{p0[0] / np, p0[1] / np, p0[2] / np};
    Vec3 e{1, 0, 0};
    if (std::abs(p[0]) > 0.6) e = {0, 1, 0};
    const double dot = e[0] * p[0] + e[1] * p[1] + e[2] * p[2];
    Vec3 u1{e[0] - dot * p[0], e[1] - dot * p[1], e[2] - dot * p[2]};
    const double n1 = std::sqrt(u1[0] * u1[0] + u1[1] * u1[1] + u1[2] * u1[2]);
    for (auto& v : u1) v /= n1;
    const Vec3 u2{p[1] * u1[2] - p[2] * u1[1], p[2] * u1[0] - p[0] * u1[2], p[0] * u1[1] - p[1] * u1[0]};

    std::ostringstream path;
    bool pen = false;
    double lastx = 0, lasty = 0;
    for (int k = 0; k <= steps; ++k) {
      const double phi = std::numbers::pi * k / steps;
      const Vec3 v{std::cos(phi) * u1[0] + std::sin(phi) * u2[0], std::cos(phi) * u1[1] + std::sin(phi) * u2[1],
                   std::cos(phi) * u1[2] + std::sin(phi) * u2[2]};
      // Second intersection of the line through p and v.
      const double qv = bilinear(s, v, v), bpv = bilinear(s, p, v);
      Vec3 x{qv * p[0] - 2 * bpv * v[0], qv * p[1] - 2 * bpv * v[1], qv * p[2] - 2 * bpv * v[2]};
      const double nx = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
      if (nx < 1e-300) {
        pen = false;
        continue;
      }
      const double far = 8 * w_;
      if (std::abs(x[2]) * far < nx) {
        pen = false;
        continue;
      }
      const double ax = x[0] / x[2], ay = x[1] / x[2];
      const bool jump = pen && std::hypot(ax - lastx, ay - lasty) > w_;
      path << ((pen && !jump) ? " L" : (path.tellp() > 0 ? " M" : "M")) << fmt(sx(ax)) << " " << fmt(sy(ay));
      pen = true;
      lastx = ax;
      lasty = ay;
    }
    return path.str();
  }

 private:
  double w_;
  int px_;
};

std::string label(const ProjPair& param) {
  const ProjPair n = normalize_pair(param);
  auto part = [](const Complex& z) {
    char buf[64];
    if (std::abs(z.imag()) < 1e-12)
      std::snprintf(buf, sizeof buf, "%.4g", z.real());
    else
      std::snprintf(buf, sizeof buf, "%.4g%+.4gi", z.real(), z.imag());
    return std::string(buf);
  };
  return "[" + part(n[0]) + " : " + part(n[1]) + "]";
}

}  // namespace

std::string render_svg(const AnalysisReport& r, const PlotOptions& opts) {
  std::vector<const SingularFiber*> members;
  for (const auto& f : r.fibers)
    if (is_conic_line_fiber(f)) members.push_back(&f);
  if (members.empty()) throw Error(Errc::NothingToPlot, "report has no conic-line members");

  const Canvas cv(opts.half_width, opts.pixels);
  const int px = opts.pixels;
  const int legend_h = 18 * (static_cast<int>(members.size()) + 1);
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px << "\" height=\"" << px + legend_h
      << "\" viewBox=\"0 0 " << px << " " << px + legend_h << "\">\n";
  svg << "<defs><clipPath id=\"window\"><rect x=\"0\" y=\"0\" width=\"" << px << "\" height=\"" << px
      << "\"/></clipPath></defs>\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << px << "\" height=\"" << px + legend_h << "\" fill=\"white\"/>\n";
  svg << "<g stroke=\"#cccccc\" stroke-width=\"1\">"
      << "<line x1=\"" << fmt(cv.sx(0)) << "\" y1=\"0\" x2=\"" << fmt(cv.sx(0)) << "\" y2=\"" << px << "\"/>"
      << "<line x1=\"0\" y1=\"" << fmt(cv.sy(0)) << "\" x2=\"" << px << "\" y2=\"" << fmt(cv.sy(0)) << "\"/></g>\n";

  std::vector<std::string> legend;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto& f = *members[i];
    const auto& dec = *f.decomposition;
    const char* color = kPalette[i % std::size(kPalette)];
    int drawn = 0, absent = 0;
    svg << "<g fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" clip-path=\"url(#window)\">\n";
    for (const auto& l : dec.lines) {
      const auto v = real_vector(l.coeffs);
      if (!v) {
        ++absent;
        continue;
      }
      ++drawn;
      if (const auto seg = cv.line(*v)) svg << "<path d=\"" << *seg << "\"/>\n";
    }
    for (const auto& c : dec.conics) {
      const auto m = real_matrix(c.sym);
      const auto p0 = m ? real_point(*m) : std::nullopt;
      if (!p0) {
        ++absent;
        continue;
      }
      ++drawn;
      const std::string d = cv.conic(*m, *p0, opts.sweep_steps);
      if (!d.empty()) svg << "<path d=\"" << d << "\"/>\n";
    }
    svg << "</g>\n";
    legend.push_back(std::string(color) + "|member " + label(f.param) + ": " + std::to_string(drawn) +
                     " real components drawn" +
                     (absent ? ", " + std::to_string(absent) + " complex components absent" : ""));
  }

  svg << "<g fill=\"black\">\n";
  for (const auto& b : r.base.points) {
    const auto& p = b.point;
    if (std::abs(p[2]) < 1e-9) continue;
    const Complex x = p[0] / p[2], y = p[1] / p[2];
    if (std::abs(x.imag()) > 1e-7 || std::abs(y.imag()) > 1e-7) continue;
    if (std::abs(x.real()) > opts.half_width || std::abs(y.real()) > opts.half_width) continue;
    svg << "<circle cx=\"" << fmt(cv.sx(x.real())) << "\" cy=\"" << fmt(cv.sy(y.real())) << "\" r=\"4\"/>\n";
  }
  svg << "</g>\n";

  svg << "<g font-family=\"monospace\" font-size=\"12\">\n";
  int y = px + 16;
  for (const auto& entry : legend) {
    const auto bar = entry.find('|');
    svg << "<rect x=\"8\" y=\"" << y - 10 << "\" width=\"12\" height=\"12\" fill=\"" << entry.substr(0, bar)
        << "\"/><text x=\"26\" y=\"" << y << "\">" << entry.substr(bar + 1) << "</text>\n";
    y += 18;
  }
  svg << "<text x=\"8\" y=\"" << y << "\">chart z=1, window [-" << fmt(opts.half_width) << ", " << fmt(opts.half_width)
      << "]^2, base points marked</text>\n";
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace clp
