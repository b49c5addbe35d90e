#pragma once

#include "skelcal/numerics.hpp"
#include "skelcal/skeleton.hpp"

#include <array>
#include <cstdint>

namespace skelcal::synthetic
{
// Rest pose of a standing adult. Offsets are relative to SpineBase in the
// body frame: +x to the body's left, +y up, +z forward.
struct BodyTemplate
{
   std::array<Point3, k_joint_count> rest_offsets{};
   double stride_length_m    = 1.4; // one full gait cycle
   double step_frequency_hz  = 1.8;
   double swing_amplitude_rad = 0.14; // peak leg/arm swing about hip/shoulder

   static BodyTemplate adult();
};

enum class TiltModel : std::uint8_t {
   ShearInverse, // exact inverse of the Y/Z tilt correction
   Rotation      // rigid rotation of (y, z) by -alpha
};

struct DistortionSpec
{
   TiltModel tilt_model = TiltModel::ShearInverse;
   double alpha         = 0.0; // radians, |alpha| < 0.5
   double h_k           = 0.0; // meters
   Polynomial beta_poly;       // radians as a function of ground-referenced Y
   double noise_std_m   = 0.0;
   std::uint64_t seed   = 0;
};

void validate(const DistortionSpec& spec);

// Standing rest pose, feet on the ground (y = 0), SpineBase at (x, ., z),
// facing the sensor.
SkeletonFrame generate_upright_frame(const BodyTemplate& body,
                                     double x,
                                     double z,
                                     std::size_t frame_index = 0);

// Ground-truth walk. Vertical: toward the sensor from z_start to z_end
// (z_start >= z_end >= 0.8; equal values give a standing capture).
// Horizontal: along +X at depth z_start, centred on x = 0, covering
// walking speed * duration; z_end is ignored.
CaptureSequence generate_truth_capture(const BodyTemplate& body,
                                       GaitDirection direction,
                                       int frames,
                                       double z_start,
                                       double z_end);

CaptureSequence distort_tilt(const CaptureSequence& seq, const DistortionSpec& spec);

// Solves y_raw = y - z*tan(P(y_raw)) per point by fixed-point iteration, so
// that the perspective correction with the same polynomial inverts it.
CaptureSequence distort_perspective(const CaptureSequence& seq, const Polynomial& beta_poly);

// Zero-mean Gaussian noise on every coordinate; deterministic for a seed.
CaptureSequence add_noise(const CaptureSequence& seq, double std_m, std::uint64_t seed);

// Perspective, then tilt, then noise: the raw capture a tilted sensor would record.
CaptureSequence distort(const CaptureSequence& truth, const DistortionSpec& spec);

} // namespace skelcal::synthetic
