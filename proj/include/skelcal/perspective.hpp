#pragma once

#include "skelcal/numerics.hpp"
#include "skelcal/skeleton.hpp"

#include <span>
#include <vector>

namespace skelcal::perspective
{
// Perspective degree of one joint at a representative height.
struct BetaPoint
{
   Joint joint = Joint::SpineBase;
   double height_y = 0.0; // meters, mean tilt-corrected Y of the joint
   double beta = 0.0;     // radians

   friend bool operator==(const BetaPoint&, const BetaPoint&) = default;
};

// Height (m) -> correction angle (rad) polynomial and the points it was fitted to.
struct BetaModel
{
   Polynomial poly;
   int fit_degree = 0;
   std::vector<BetaPoint> source_points;

   friend bool operator==(const BetaModel&, const BetaModel&) = default;
};

constexpr double k_default_min_depth_travel = 0.05;

// Head, neck, spine-shoulder, mid-spine, base-spine, knees and ankles.
const std::vector<Joint>& default_beta_joints();

// atan((y_first - y_last) / (z_first - z_last)) for joint `j` of a Vertical gait.
double joint_perspective_degree(const CaptureSequence& seq,
                                Joint j,
                                double min_depth_travel = k_default_min_depth_travel);

// Per joint: mean of the per-gait degrees over gaits where it is computable,
// at the joint's mean Y over all frames of all gaits. Sorted by height, top first.
std::vector<BetaPoint> mean_perspective_degrees(std::span<const CaptureSequence> seqs,
                                                std::span<const Joint> joints,
                                                double min_depth_travel
                                                = k_default_min_depth_travel);

// Estimated drift angles have the opposite sign of the angle that removes the
// drift in perspective_correct_point.
std::vector<BetaPoint> to_correction_points(std::span<const BetaPoint> measured);

BetaModel fit_beta_model(std::span<const BetaPoint> points, int degree);

// Zero polynomial; correction with it is the identity.
BetaModel zero_model();

// y' = y + z * tan(P(y)), with P evaluated at the incoming y.
Point3 perspective_correct_point(const Point3& p, const BetaModel& model);

CaptureSequence perspective_correct_sequence(const CaptureSequence& seq, const BetaModel& model);

} // namespace skelcal::perspective
