#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "clp/forms.hpp"
#include "clp/tolerances.hpp"

namespace clp {

struct LineFactor {
  std::array<Complex, 3> coeffs;  // a x + b y + c z, largest entry 1
  int multiplicity = 1;
  std::optional<std::array<QComplex, 3>> exact;

  Form form() const;
};

struct ConicFactor {
  std::array<std::array<Complex, 3>, 3> sym;  // symmetric, largest entry 1
  int multiplicity = 1;
  bool irreducible = true;
  std::optional<ExactForm> exact;

  Form form() const;
  static ConicFactor from_form(const Form& q);
};

struct Decomposition {
  std::vector<LineFactor> lines;
  std::vector<ConicFactor> conics;
  int q = 0;
  bool is_conic_line = true;
  std::optional<ProjPoint> concurrent_point;
  bool general_position = false;
  /// Every factor rationalized and the product divides the member exactly.
  bool certified = false;

  int component_count() const { return static_cast<int>(lines.size() + conics.size()); }
  std::vector<Form> components() const;
};

/// Outcome of detect_components when some component has degree >= 3.
struct NotConicLine {
  int remainder_degree = 0;
  std::vector<LineFactor> lines;
  std::vector<ConicFactor> conics;
};

using Classification = std::variant<Decomposition, NotConicLine>;

/// Points of {h = 0} on n seeded random lines (n * deg h points).
std::vector<ProjPoint> sample_curve_points(const Form& h, int n, std::uint64_t seed);

/// Line and conic factors of a reduced member by sampling, fitting and deflation.
/// When `exact` is given the factors are rationalized and certified by exact division.
Classification detect_components(const Form& h, std::span<const ProjPoint> singular_pts, std::uint64_t seed,
                                 const Tolerances& tol = {}, const std::optional<ExactForm>& exact = std::nullopt);

/// Common point of the lines when their coefficient matrix has rank <= 2.
std::optional<ProjPoint> concurrency(std::span<const LineFactor> lines, double tol = 1e-7);

/// Pairwise transversality and no triple points among the components.
bool general_position(const Decomposition& dec, std::uint64_t seed, const Tolerances& tol = {});

/// Line through two points.
std::array<Complex, 3> line_through(const ProjPoint& p, const ProjPoint& q);

}  // namespace clp
