#pragma once

#include "skelcal/skeleton.hpp"

#include <array>
#include <span>
#include <vector>

namespace skelcal::diagnostics
{
// y(frame k) - y(last frame) for one joint; the last entry is exactly 0.
struct DiffSeries
{
   Joint joint = Joint::SpineBase;
   std::vector<double> per_frame_diff;

   double max_abs() const noexcept;
};

std::vector<DiffSeries> y_diff_to_last(const CaptureSequence& seq, std::span<const Joint> joints);

// Largest |diff| over all series (0 for no series).
double max_abs_diff(std::span<const DiffSeries> series) noexcept;

struct BoneLength
{
   SkeletonEdge edge;
   double length_m = 0.0;
};

std::array<BoneLength, k_edge_count> bone_lengths(const SkeletonFrame& frame) noexcept;

struct EdgeStability
{
   std::size_t edge_id = 0; // position in skeleton_edges()
   SkeletonEdge edge;
   double mean_length_m = 0.0;
   double std_length_m  = 0.0; // population std over frames
   double max_abs_dev_m = 0.0; // max |length - mean|
};

struct StabilityReport
{
   std::vector<EdgeStability> edges;
   double max_std_m = 0.0;
};

// Throws InsufficientFrames for fewer than 2 frames.
StabilityReport bone_length_stability(const CaptureSequence& seq);

} // namespace skelcal::diagnostics
