#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace clp {

enum class Errc {
  ParseError,
  NotHomogeneous,
  DegreeMismatch,
  CoincidentPoints,
  ZeroForm,
  NonConvergence,
  CommonComponent,
  LiftFailure,
  DegenerateEliminant,
  NonReducedMember,
  NonReducedInput,
  ZeroParam,
  SharedComponent,
  NonIsolated,
  BadParameter,
  NothingToPlot,
  NotTransverse,
  Io,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace clp
