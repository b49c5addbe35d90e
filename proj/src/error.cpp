#include "skelcal/error.hpp"

namespace skelcal
{
std::string_view to_string(ErrorCode code) noexcept
{
   switch(code) {
#define E(x) \
   case ErrorCode::x: return #x;
      E(EmptySequence);
      E(NonFiniteCoordinate);
      E(WrongJointCount);
      E(NonMonotonicFrameIndex);
      E(EmptyInput);
      E(NonPositiveValue);
      E(InsufficientPoints);
      E(DegenerateSystem);
      E(DegenerateSpine);
      E(NoUsableFrames);
      E(MixedSignAngles);
      E(ZeroAngle);
      E(InvalidTiltParams);
      E(InsufficientDepthTravel);
      E(WrongDirection);
      E(NoUsableGaits);
      E(BetaOutOfRange);
      E(InvalidConfig);
      E(InvalidScenario);
      E(FixedPointDivergence);
      E(InsufficientFrames);
      E(ParseError);
      E(MissingJoint);
      E(IoFailure);
      E(SchemaError);
#undef E
   }
   return "<unknown>";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail)
    , code_(code)
    , detail_(detail)
{}

} // namespace skelcal
