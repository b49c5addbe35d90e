#include "skelcal/tilt.hpp"

#include "skelcal/error.hpp"
#include "skelcal/numerics.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace skelcal::tilt
{
void validate(const TiltParams& params)
{
   if(!std::isfinite(params.alpha_g) || std::abs(params.alpha_g) >= std::numbers::pi / 2.0)
      throw Error(ErrorCode::InvalidTiltParams,
                  "alpha_g must satisfy |alpha_g| < pi/2, got "
                      + std::to_string(params.alpha_g));
   if(!std::isfinite(params.h_k) || params.h_k < 0.0)
      throw Error(ErrorCode::InvalidTiltParams,
                  "h_k must be finite and >= 0, got " + std::to_string(params.h_k));
}

double frame_inclination(const SkeletonFrame& frame)
{
   const auto& base = frame[Joint::SpineBase];
   const auto& mid  = frame[Joint::SpineMid];
   const double dy  = mid.y - base.y;
   if(std::abs(dy) <= k_min_spine_dy)
      throw Error(ErrorCode::DegenerateSpine,
                  "frame " + std::to_string(frame.frame_index) + " spine dY = "
                      + std::to_string(dy));
   return std::atan2(mid.z - base.z, dy);
}

GaitInclination gait_inclination(const CaptureSequence& seq)
{
   GaitInclination out;
   out.per_frame.reserve(seq.frames.size());
   for(const auto& f : seq.frames) {
      const double dy = f[Joint::SpineMid].y - f[Joint::SpineBase].y;
      if(std::abs(dy) <= k_min_spine_dy) continue;
      out.per_frame.push_back(frame_inclination(f));
   }
   if(out.per_frame.empty())
      throw Error(ErrorCode::NoUsableFrames,
                  "no frame of '" + seq.label + "' has a usable spine segment");
   out.mean = arithmetic_mean(out.per_frame);
   return out;
}

double aggregate_inclination(std::span<const double> gait_means)
{
   if(gait_means.empty()) throw Error(ErrorCode::EmptyInput, "no gait inclinations");

   bool any_pos = false, any_neg = false;
   std::vector<double> magnitudes;
   magnitudes.reserve(gait_means.size());
   for(const auto a : gait_means) {
      if(a == 0.0) throw Error(ErrorCode::ZeroAngle, "gait inclination is exactly zero");
      (a > 0.0 ? any_pos : any_neg) = true;
      magnitudes.push_back(std::abs(a));
   }
   if(any_pos && any_neg)
      throw Error(ErrorCode::MixedSignAngles, "gait inclinations disagree in sign");

   const double sign = any_neg ? -1.0 : 1.0;
   return sign * geometric_mean(magnitudes);
}

double correction_angle(std::span<const double> gait_means, double noise_floor)
{
   if(gait_means.empty()) throw Error(ErrorCode::EmptyInput, "no gait inclinations");
   bool all_level = true;
   for(const auto a : gait_means)
      if(std::abs(a) >= noise_floor) all_level = false;
   if(all_level) return 0.0;
   return -aggregate_inclination(gait_means);
}

Point3 tilt_correct_point(const Point3& p, const TiltParams& params) noexcept
{
   const double s = std::sin(params.alpha_g);
   const double z = p.y * s + p.z;
   const double y = z * s + p.y + params.h_k;
   return {p.x, y, z};
}

CaptureSequence tilt_correct_sequence(const CaptureSequence& seq, const TiltParams& params)
{
   CaptureSequence out = seq;
   for(auto& f : out.frames)
      for(auto& p : f.joints) p = tilt_correct_point(p, params);
   return out;
}

} // namespace skelcal::tilt
