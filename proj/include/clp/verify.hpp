#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clp/pencil.hpp"

namespace clp {

enum class Status { Pass, Fail, NotApplicable };

std::string_view to_string(Status s);

struct Verdict {
  std::string name;
  Status status = Status::NotApplicable;
  std::string details;
};

struct AnalysisReport {
  int degree = 0;
  std::uint64_t seed = 0;
  Tolerances tol;
  ExactForm f, g;
  BaseLocus base;
  std::vector<SingularFiber> fibers;
  int m = 0;     // conic-line members
  int p = 0;     // members that are d concurrent lines
  int qbar = 0;  // conics summed over the other conic-line members
  Ledger ledger;
  std::vector<Verdict> verdicts;
};

/// Full pipeline: base locus, singular members, counts, ledger and verdicts.
/// Throws NotTransverse when the base locus has fewer than d^2 simple points.
AnalysisReport analyze_pencil(const ExactForm& f, const ExactForm& g, std::uint64_t seed,
                              const Tolerances& tol = {});

/// Recomputes m, p, qbar and the ledger from the fibers.
void summarize(AnalysisReport& r);

/// Conic-line, reduced and decomposed.
bool is_conic_line_fiber(const SingularFiber& f);
/// d lines through one point.
bool is_concurrent_fiber(const SingularFiber& f, int d);

Verdict check_characteristic_bounds(const SingularFiber& fiber, int d);
Verdict check_concurrent_lines(const SingularFiber& fiber, int d);
Verdict check_member_count(const AnalysisReport& r);
Verdict check_non_special_bound(const AnalysisReport& r);
Verdict check_six_member_structure(const AnalysisReport& r);
Verdict check_node_count(const SingularFiber& fiber, int d);

Verdict check_ledger(const AnalysisReport& r);
Verdict check_report_counts(const AnalysisReport& r);
/// Milnor numbers against multiplicities in the critical scheme.
Verdict check_milnor_consistency(const AnalysisReport& r);
/// The two Euler characteristics of each conic-line fiber agree.
Verdict check_euler_agreement(const AnalysisReport& r);
/// mu = 2 delta - r + 1 at every conic-line singular point.
Verdict check_delta_formula(const AnalysisReport& r);

/// Every check above; per-fiber checks produce one verdict per conic-line fiber.
std::vector<Verdict> run_checks(const AnalysisReport& r);

bool any_failed(const std::vector<Verdict>& v);

}  // namespace clp
