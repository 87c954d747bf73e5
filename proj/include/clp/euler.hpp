#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "clp/classify.hpp"
#include "clp/roots.hpp"
#include "clp/tolerances.hpp"

namespace clp {

struct LocalSingularity {
  ProjPoint point;
  int milnor = 0;
  int branches = 0;  // r_p, components through the point
  int delta = 0;
};

struct LedgerEntry {
  ProjPair param;
  int euler = 0;
  int milnor_total = 0;
};

struct Ledger {
  int degree = 0;
  int e_surface = 0;
  int e_generic = 0;
  int genus = 0;
  std::vector<LedgerEntry> fibers;
  int balance = 0;
};

/// Intersection multiplicity of two curves summed over common points within
/// rho_loc of p.
int local_intersection(const Form& f1, const Form& f2, const ProjPoint& p, std::uint64_t seed,
                       const Tolerances& tol = {});
int local_intersection(const ExactForm& f1, const ExactForm& f2, const ProjPoint& p, std::uint64_t seed,
                       const Tolerances& tol = {});

/// Milnor number as the number of solutions of the perturbed gradient system
/// near p, in generic affine coordinates; two seeds must agree.
int milnor_number(const Form& h, const ProjPoint& p, std::uint64_t seed, const Tolerances& tol = {});
int milnor_number(const ExactForm& h, const ProjPoint& p, std::uint64_t seed, const Tolerances& tol = {});

/// Common zeros of the two affine partials of h in a chart where p is finite, in the
/// caller's coordinates. Throws NonIsolated when the partials share a component.
std::vector<IntersectionPoint> polar_points(const ExactForm& h, const ProjPoint& p, std::uint64_t seed);

/// Milnor number as the local intersection number of the two affine partials (exact).
int milnor_polar(const ExactForm& h, const ProjPoint& p, std::uint64_t seed, const Tolerances& tol = {});

/// Number of components of `dec` passing through p.
int branch_count(const Decomposition& dec, const ProjPoint& p, double tol = 1e-6);

/// Sum of local intersection numbers at p over pairs of components through p.
int delta_invariant(const Decomposition& dec, const ProjPoint& p, std::uint64_t seed, const Tolerances& tol = {});

int euler_conic_line(const Decomposition& dec, std::span<const LocalSingularity> sing);
int euler_fiber(int d, std::span<const int> milnor);
int node_count_general_position(int d, int q);
Ledger global_ledger(std::span<const LedgerEntry> fibers, int d);

}  // namespace clp
