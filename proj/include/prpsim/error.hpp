#pragma once
#include <stdexcept>
#include <string>

namespace prpsim {

/// Machine-readable failure categories. Sweep drivers store the code of a
/// failed cell instead of aborting; the CLI maps any Error to exit status 2.
enum class ErrorCode {
  Validation,
  IntegrationFailure,
  DegenerateDenominator,
  InvalidIntensity,
  Unachievable,
  NonMonotoneBracket,
  InvalidDecoyPair,
  NonpositiveYield,
  DomainError,
  InvalidGain,
  ZeroGain,
  NoValidOutcomes,
  ConfigError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace prpsim
