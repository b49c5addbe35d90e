#pragma once

#include "skelcal/perspective.hpp"
#include "skelcal/skeleton.hpp"
#include "skelcal/tilt.hpp"

#include <span>
#include <string>
#include <vector>

namespace skelcal
{
struct PipelineConfig
{
   int beta_degree                = 2; // [1, 6]
   std::vector<Joint> beta_joints = perspective::default_beta_joints();
   double min_depth_travel_m      = perspective::k_default_min_depth_travel;
};

void validate(const PipelineConfig& config);

struct CalibrationProfile
{
   tilt::TiltParams tilt;
   perspective::BetaModel beta;
   int gait_count = 0;
   std::string created_label;

   friend bool operator==(const CalibrationProfile&, const CalibrationProfile&) = default;
};

// Throws InvalidConfig (or the tilt/beta error) when the profile is inconsistent.
void validate(const CalibrationProfile& profile);

// Profile that leaves every capture unchanged.
CalibrationProfile identity_profile();

// Two-stage calibration from vertical gaits:
//   1. per-gait mean spine inclination, aggregated to the correction angle;
//   2. tilt + height correction of every gait;
//   3. per-joint perspective degrees from the corrected gaits;
//   4. least-squares P_beta at config.beta_degree.
// Stage failures are rethrown with the stage name prefixed to the detail.
CalibrationProfile calibrate(std::span<const CaptureSequence> vertical_gaits,
                             double h_k,
                             const PipelineConfig& config = {},
                             std::string label            = {});

// Tilt correction then perspective correction. Not idempotent: each
// application adds h_k again.
CaptureSequence apply_profile(const CaptureSequence& seq, const CalibrationProfile& profile);

} // namespace skelcal
