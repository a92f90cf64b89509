#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bcover {

enum class ErrorCode {
  InvalidArgument,
  OnAxisInput,
  PunctureInput,
  PoleOverflow,
  NonsmoothPoint,
  DegenerateJacobian,
  RefinementExhausted,
  ValueCollision,
  NoSolver,
  InsufficientSmoothSamples,
  Usage,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a machine-readable code so the
// CLI can map it onto exit codes and structured stderr output.
class MapError : public std::runtime_error {
 public:
  MapError(ErrorCode code, const std::string& what, std::optional<int> stage = std::nullopt)
      : std::runtime_error(what), code_(code), stage_(stage) {}

  ErrorCode code() const noexcept { return code_; }
  // Index of the failing stage when raised from a composition.
  std::optional<int> stage() const noexcept { return stage_; }

 private:
  ErrorCode code_;
  std::optional<int> stage_;
};

}  // namespace bcover
