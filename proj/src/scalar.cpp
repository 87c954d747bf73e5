#include "clp/scalar.hpp"

#include <cmath>
#include <cstdio>

#include "clp/error.hpp"

namespace clp {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::ParseError: return "ParseError";
    case Errc::NotHomogeneous: return "NotHomogeneous";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::CoincidentPoints: return "CoincidentPoints";
    case Errc::ZeroForm: return "ZeroForm";
    case Errc::NonConvergence: return "NonConvergence";
    case Errc::CommonComponent: return "CommonComponent";
    case Errc::LiftFailure: return "LiftFailure";
    case Errc::DegenerateEliminant: return "DegenerateEliminant";
    case Errc::NonReducedMember: return "NonReducedMember";
    case Errc::NonReducedInput: return "NonReducedInput";
    case Errc::ZeroParam: return "ZeroParam";
    case Errc::SharedComponent: return "SharedComponent";
    case Errc::NonIsolated: return "NonIsolated";
    case Errc::BadParameter: return "BadParameter";
    case Errc::NothingToPlot: return "NothingToPlot";
    case Errc::NotTransverse: return "NotTransverse";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

QComplex& QComplex::operator*=(const QComplex& o) {
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

QComplex& QComplex::operator/=(const QComplex& o) {
  const mpq_class n = o.norm();
  if (sgn(n) == 0) throw std::domain_error("QComplex division by zero");
  mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
  mpq_class i = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

std::string QComplex::to_string() const {
  if (is_zero()) return "0";
  if (sgn(im_) == 0) return re_.get_str();
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = im_.get_str() + "i";
  }
  if (sgn(re_) == 0) return imag;
  return re_.get_str() + (sgn(im_) > 0 ? "+" : "") + imag;
}

GaussInt exact_quotient(const GaussInt& a, const GaussInt& b) {
  // a * conj(b) / |b|^2, divisions are exact by assumption.
  const mpz_class n = b.re * b.re + b.im * b.im;
  mpz_class r = a.re * b.re + a.im * b.im;
  mpz_class i = a.im * b.re - a.re * b.im;
  mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
  mpz_divexact(i.get_mpz_t(), i.get_mpz_t(), n.get_mpz_t());
  return {std::move(r), std::move(i)};
}

mpq_class rationalize(double v, long max_den) {
  if (!std::isfinite(v)) throw std::domain_error("rationalize: non-finite value");
  const bool neg = v < 0;
  double x = std::fabs(v);
  // Convergents h/k of the continued fraction of x.
  mpz_class h_prev = 1, h = static_cast<long>(std::floor(x));
  mpz_class k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  for (int iter = 0; iter < 64 && frac > 1e-300; ++iter) {
    x = 1.0 / frac;
    const double a_d = std::floor(x);
    if (a_d > 1e15) break;
    const mpz_class a = static_cast<long>(a_d);
    const mpz_class h_next = a * h + h_prev;
    const mpz_class k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    frac = x - a_d;
  }
  mpq_class q(neg ? mpz_class(-h) : h, k);
  q.canonicalize();
  return q;
}

bool rationalize(const Complex& v, long max_den, double tol, QComplex& out) {
  const mpq_class re = rationalize(v.real(), max_den);
  const mpq_class im = rationalize(v.imag(), max_den);
  if (std::fabs(re.get_d() - v.real()) > tol || std::fabs(im.get_d() - v.imag()) > tol) return false;
  out = QComplex(re, im);
  return true;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

}  // namespace clp
