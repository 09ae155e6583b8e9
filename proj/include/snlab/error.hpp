#pragma once

#include <stdexcept>
#include <string>

namespace snlab {

// Failure classes surfaced to callers. The CLI maps any of these to exit
// code 1; malformed command lines exit with 2 before library code runs.
enum class Errc {
  SyntaxError,
  DuplicateLabelCount,
  NonPositiveWeight,
  Disconnected,
  NotAClosedWalk,
  NotACycle,
  NotSimple,
  BaseOrientable,
  NotOrientable,
  NotOnSphere,
  CircuitBudgetExceeded,
  DimensionCapExceeded,
  NotDisjoint,
  ProportionalClasses,
  NoSpanProgress,
  SearchBudgetExceeded,
  Internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
        code_(code) {}

  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& detail) {
  throw Error(code, detail);
}

}  // namespace snlab
