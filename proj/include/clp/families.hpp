#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clp/pencil.hpp"
#include "clp/verify.hpp"

namespace clp {

struct ExpectedMember {
  ProjPair param;
  std::optional<ExactPair> exact_param;  // absent when the parameter is irrational
  int lines = 0;
  int conics = 0;
  bool concurrent = false;
  int euler = 0;
  std::optional<bool> general_position;
  std::vector<ExactForm> factors;  // expected components up to scalar; may be empty
};

struct FamilySpec {
  std::string name;
  std::string parameters;
  ExactForm f, g;
  int p = 0;
  std::vector<ExpectedMember> expected;  // every conic-line member
  std::optional<int> non_special;        // number of non-special singular fibers
};

FamilySpec fermat_family(int d);
/// Throws BadParameter for a in {0, 1}.
FamilySpec pa_family(const QComplex& a);
FamilySpec hesse_family();

Pencil fermat_pencil(int d, std::uint64_t seed = 1);
Pencil pa_pencil(const QComplex& a, std::uint64_t seed = 1);
Pencil hesse_pencil(std::uint64_t seed = 1);

/// Differences between an analysis and the family's expected table; empty when they agree.
std::vector<std::string> compare_expected(const AnalysisReport& r, const FamilySpec& fam, double param_tol = 1e-6,
                                          double factor_tol = 1e-6);

Verdict check_expected_table(const AnalysisReport& r, const FamilySpec& fam);

/// Named corpus: "default" (fermat 3..5, pa 2, 3, -1, 1/2, hesse), "empty", or a single
/// family such as "fermat:4", "pa:1/2", "hesse".
std::vector<FamilySpec> corpus(const std::string& name);

}  // namespace clp
