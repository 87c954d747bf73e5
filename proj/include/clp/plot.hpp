#pragma once

#include <string>

#include "clp/verify.hpp"

namespace clp {

struct PlotOptions {
  double half_width = 2.5;  // affine window [-w, w]^2 in the chart z = 1
  int pixels = 600;
  int sweep_steps = 1440;
};

/// Real locus of every conic-line member in the chart z = 1, one color per member,
/// base points marked. Throws NothingToPlot when the report has no conic-line member.
std::string render_svg(const AnalysisReport& r, const PlotOptions& opts = {});

}  // namespace clp
