#pragma once

#include <stdexcept>
#include <string>

namespace skein {

/// Typed failure conditions surfaced by the library operations.
enum class Errc {
  InvalidPoint,
  Degenerate,
  NotSeparableAtTruncation,
  GammaExhausted,
  NotEndpointFixing,
  NotMonotone,
  PreconditionGap,
  PreconditionFailed,
  LipIncreased,
  NotInN,
  NoNearbyPoint,
  FactorialGuard,
  DeepeningExhausted,
  MeasureViolation,
  SearchGuard,
  GlueNotIsometric,
  NotMaterialized,
  OutsideStabilityBall,
  Ambiguous,
  CriterionMismatch,
  NotIsolated,
  InvalidArgument,
  ParseError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace skein
