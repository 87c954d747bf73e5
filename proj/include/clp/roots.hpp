#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "clp/forms.hpp"

namespace clp {

using ProjPair = std::array<Complex, 2>;

/// Normalizes [s:t] so that its larger-modulus entry is 1.
ProjPair normalize_pair(const ProjPair& p);

struct RootCluster {
  ProjPair representative;
  int multiplicity = 1;
  double radius = 0;
  double max_residual = 0;
};

struct RootOptions {
  double cluster_radius = 1e-6;  // rho_c, chordal
  int max_iterations = 500;
  int retries = 3;
  std::uint64_t seed = 0x5eed;
};

/// All roots of a nonzero binary form in CP^1, clustered; multiplicity is the
/// cluster cardinality.  Sorted by representative coordinates.
std::vector<RootCluster> solve_binary(const Binary& b, const RootOptions& opts = {});

/// Exact input: multiplicities come from the square-free decomposition, and
/// only square-free factors are solved numerically.
std::vector<RootCluster> solve_binary(const ExactBinary& b, const RootOptions& opts = {});

/// Simultaneous Aberth-Ehrlich iteration on a dense polynomial (increasing
/// degree, nonzero leading coefficient).  Returns false when the cap is hit.
bool aberth(std::span<const Complex> coeffs, std::vector<Complex>& roots, int max_iterations);

struct PointCluster {
  ProjPoint representative;
  std::vector<std::size_t> members;
};

/// Single-linkage clustering under the chordal metric, in input order.
std::vector<PointCluster> cluster_points(std::span<const ProjPoint> pts, double radius);

// ---------------------------------------------------------------------------
// Univariate polynomials over Q(i), coefficients in increasing degree.

using QPoly = std::vector<QComplex>;

void trim(QPoly& p);
int degree(const QPoly& p);
QPoly derivative(const QPoly& p);
/// Quotient and remainder of a by b.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
/// Monic greatest common divisor.
QPoly gcd(QPoly a, QPoly b);
bool is_squarefree(const QPoly& p);
/// Factors (A_i, i) with p = c * prod A_i^i, A_i square-free and coprime.
std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& p);
/// Coefficients scaled by a power of two so the largest has modulus near 1.
std::vector<Complex> to_scaled_floating(const QPoly& p);

// ---------------------------------------------------------------------------

struct IntersectionPoint {
  ProjPoint point;
  int multiplicity = 1;
};

/// Intersection of two coprime exact curves with exact multiplicities.
/// Elimination uses generic integer coordinates (the caller's coordinates
/// first when `caller_coordinates_generic`).
std::vector<IntersectionPoint> intersect(const ExactForm& f, const ExactForm& g, std::uint64_t seed,
                                         bool caller_coordinates_generic = false);

/// Floating intersection; multiplicities are eliminant cluster sizes.
std::vector<IntersectionPoint> intersect(const Form& f, const Form& g, std::uint64_t seed,
                                         const RootOptions& opts = {});

}  // namespace clp
