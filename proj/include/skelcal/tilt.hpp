#pragma once

#include "skelcal/skeleton.hpp"

#include <span>
#include <vector>

namespace skelcal::tilt
{
// Sensor inclination and height used by the Y/Z correction.
struct TiltParams
{
   double alpha_g = 0.0; // radians, |alpha_g| < pi/2
   double h_k = 0.0;     // meters above ground, >= 0

   friend bool operator==(const TiltParams&, const TiltParams&) = default;
};

// Throws InvalidTiltParams when the invariants do not hold.
void validate(const TiltParams& params);

struct GaitInclination
{
   std::vector<double> per_frame; // one angle per usable frame
   double mean = 0.0;             // arithmetic mean of per_frame
};

// Minimum |dY| between SpineBase and SpineMid for a frame to be usable.
constexpr double k_min_spine_dy = 1e-6;

// Deviation of the SpineBase -> SpineMid segment from vertical in the YZ
// plane, atan2(dZ, dY). Positive when the higher joint reads larger Z.
double frame_inclination(const SkeletonFrame& frame);

// Per-frame inclinations and their mean; degenerate-spine frames are skipped.
GaitInclination gait_inclination(const CaptureSequence& seq);

// Geometric mean of the per-gait means with their common sign reattached.
double aggregate_inclination(std::span<const double> gait_means);

// Below this every gait mean is treated as noise and the sensor as level.
constexpr double k_level_noise_floor = 1e-4;

// Correction angle for tilt_correct_point from per-gait mean inclinations.
// Returns 0 when every |mean| < noise_floor; otherwise the negated
// aggregate_inclination, since the correction shears Z by +y*sin(alpha)
// and so cancels a spine lean of the opposite sign.
double correction_angle(std::span<const double> gait_means,
                        double noise_floor = k_level_noise_floor);

// z_c = y*sin(a) + z, then y_c = z_c*sin(a) + y + h_k. X untouched.
Point3 tilt_correct_point(const Point3& p, const TiltParams& params) noexcept;

CaptureSequence tilt_correct_sequence(const CaptureSequence& seq, const TiltParams& params);

} // namespace skelcal::tilt
