#pragma once

namespace clp {

struct Tolerances {
  double tau = 1e-8;       // relative residuals
  double tau_div = 1e-7;   // least-squares division
  double rho_c = 1e-6;     // cluster radius, chordal
  double rho_loc = 1e-2;   // locality radius for local counts
  double epsilon = 1e-9;   // gradient perturbation, relative to the form norm
};

}  // namespace clp
