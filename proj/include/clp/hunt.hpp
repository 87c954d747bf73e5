#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "json.hpp"

#include "clp/verify.hpp"

namespace clp {

enum class Template { RandomDense, ConicLinePair, PaLike };

Template parse_template(const std::string& name);
std::string_view to_string(Template t);

struct HuntConfig {
  int degree = 3;
  int trials = 0;
  Template kind = Template::ConicLinePair;
  std::uint64_t seed = 1;
  int coefficient_bound = 5;
  int workers = 1;
  Tolerances tol;
};

/// The generators of one trial; deterministic in (config, trial).
std::pair<ExactForm, ExactForm> hunt_generators(const HuntConfig& cfg, int trial);

struct HuntSummary {
  int records = 0;
  int analyzed = 0;
  int skipped = 0;
  int candidates = 0;  // m >= 5
  int violations = 0;  // member-count-bound failures
  int check_failures = 0;
};

/// Runs the trials, handing each record to `sink` in trial order. Records with
/// m >= 5 are also handed to `candidate_sink`.
HuntSummary run_hunt(const HuntConfig& cfg, const std::function<void(const nlohmann::json&)>& sink,
                     const std::function<void(const nlohmann::json&)>& candidate_sink = {},
                     const std::function<void(const AnalysisReport&)>& on_report = {});

}  // namespace clp
