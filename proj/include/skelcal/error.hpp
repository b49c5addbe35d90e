#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace skelcal
{
enum class ErrorCode {
   // skeleton model
   EmptySequence,
   NonFiniteCoordinate,
   WrongJointCount,
   NonMonotonicFrameIndex,
   // numerics
   EmptyInput,
   NonPositiveValue,
   InsufficientPoints,
   DegenerateSystem,
   // tilt
   DegenerateSpine,
   NoUsableFrames,
   MixedSignAngles,
   ZeroAngle,
   InvalidTiltParams,
   // perspective
   InsufficientDepthTravel,
   WrongDirection,
   NoUsableGaits,
   BetaOutOfRange,
   // pipeline / synthetic / diagnostics
   InvalidConfig,
   InvalidScenario,
   FixedPointDivergence,
   InsufficientFrames,
   // io
   ParseError,
   MissingJoint,
   IoFailure,
   SchemaError,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures are reported through this type. `what()` carries the
// code name followed by the detail, so it is fit to print as-is.
class Error : public std::runtime_error
{
 public:
   Error(ErrorCode code, const std::string& detail);

   ErrorCode code() const noexcept { return code_; }
   const std::string& detail() const noexcept { return detail_; }

 private:
   ErrorCode code_;
   std::string detail_;
};

} // namespace skelcal
