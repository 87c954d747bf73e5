#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clp/classify.hpp"
#include "clp/euler.hpp"
#include "clp/roots.hpp"
#include "clp/tolerances.hpp"

namespace clp {

using ExactPair = std::array<QComplex, 2>;

struct Pencil {
  ExactForm f, g;
  int degree = 0;
  std::uint64_t seed = 0;
  ExactTransform working;  // generic coordinates for the critical locus
  Tolerances tol;
};

struct BaseLocus {
  std::vector<IntersectionPoint> points;
  int count = 0;
  bool transverse = false;
};

struct CriticalPoint {
  ProjPoint point;
  ProjPair param;
  int multiplicity = 1;  // local multiplicity in the critical scheme
  int cluster = -1;
};

struct SingularPoint {
  ProjPoint point;
  int milnor = 0;
  int branches = 0;  // r_p; 0 when the fiber is not conic-line
  int delta = 0;
  int critical_multiplicity = 0;
};

struct SingularFiber {
  ProjPair param;
  std::optional<ExactPair> exact_param;
  Form form;
  std::optional<ExactForm> exact_form;
  std::vector<SingularPoint> singular_points;
  int euler = 0;
  bool special = false;
  bool reduced = true;
  std::optional<Decomposition> decomposition;
  int remainder_degree = 0;  // degree left undecomposed for non-special fibers
  int euler_conic_line = 0;  // second Euler computation, conic-line fibers only

  int milnor_total() const;
};

Pencil make_pencil(const ExactForm& f, const ExactForm& g, std::uint64_t seed, const Tolerances& tol = {});

BaseLocus base_locus(const Pencil& p);

/// lambda f + mu g, coefficient-normalized.
Form member(const Pencil& p, const ProjPair& param);
ExactForm member(const Pencil& p, const ExactPair& param);

std::vector<CriticalPoint> critical_points(const Pencil& p, const BaseLocus& base);

/// Singular members sorted by parameter, each classified and with Milnor numbers.
std::vector<SingularFiber> singular_members(const Pencil& p, const std::vector<CriticalPoint>& crit);

/// No repeated factor, tested on a generic slice.
bool is_reduced(const Form& h, std::uint64_t seed = 1);
bool is_reduced(const ExactForm& h, std::uint64_t seed = 1);

/// Orders parameters by their normalized coordinates.
bool param_less(const ProjPair& a, const ProjPair& b);

}  // namespace clp
