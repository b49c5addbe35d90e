#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace skelcal
{
// ------------------------------------------------------------------- joints
//
// Depth-sensor skeleton joint indices. Values are the on-wire joint numbers.
enum class Joint : std::uint8_t {
   SpineBase = 0,
   SpineMid,      // 1
   Neck,          // 2
   Head,          // 3
   ShoulderLeft,  // 4
   ElbowLeft,     // 5
   WristLeft,     // 6
   HandLeft,      // 7
   ShoulderRight, // 8
   ElbowRight,    // 9
   WristRight,    // 10
   HandRight,     // 11
   HipLeft,       // 12
   KneeLeft,      // 13
   AnkleLeft,     // 14
   FootLeft,      // 15
   HipRight,      // 16
   KneeRight,     // 17
   AnkleRight,    // 18
   FootRight,     // 19
   SpineShoulder, // 20
   HandTipLeft,   // 21
   ThumbLeft,     // 22
   HandTipRight,  // 23
   ThumbRight     // 24
};

constexpr std::size_t k_joint_count = 25;

constexpr std::size_t index(Joint j) noexcept { return static_cast<std::size_t>(j); }

std::string_view joint_name(Joint j) noexcept;
std::optional<Joint> joint_from_name(std::string_view name) noexcept;
std::optional<Joint> joint_from_index(long long value) noexcept;

// All 25 joints in index order.
const std::array<Joint, k_joint_count>& all_joints() noexcept;

// ------------------------------------------------------------------- Point3
//
// Sensor frame, meters: X lateral, Y up, Z away from the sensor.
struct Point3
{
   double x = 0.0;
   double y = 0.0;
   double z = 0.0;

   bool is_finite() const noexcept;

   friend Point3 operator+(const Point3& a, const Point3& b) noexcept
   {
      return {a.x + b.x, a.y + b.y, a.z + b.z};
   }
   friend Point3 operator-(const Point3& a, const Point3& b) noexcept
   {
      return {a.x - b.x, a.y - b.y, a.z - b.z};
   }
   friend Point3 operator*(double s, const Point3& p) noexcept
   {
      return {s * p.x, s * p.y, s * p.z};
   }
   friend bool operator==(const Point3&, const Point3&) = default;
};

double distance(const Point3& a, const Point3& b) noexcept;

// ------------------------------------------------------------ SkeletonFrame
//
struct SkeletonFrame
{
   std::size_t frame_index = 0;
   std::array<Point3, k_joint_count> joints{};

   const Point3& operator[](Joint j) const noexcept { return joints[index(j)]; }
   Point3& operator[](Joint j) noexcept { return joints[index(j)]; }

   friend bool operator==(const SkeletonFrame&, const SkeletonFrame&) = default;
};

// Builds a frame from dynamically sized data; throws WrongJointCount unless
// exactly 25 points are given.
SkeletonFrame make_frame(std::size_t frame_index, std::span<const Point3> points);

// ---------------------------------------------------------- CaptureSequence
//
enum class GaitDirection : std::uint8_t {
   Vertical,  // toward the sensor along Z
   Horizontal // across the view along X
};

std::string_view to_string(GaitDirection d) noexcept;
std::optional<GaitDirection> direction_from_string(std::string_view s) noexcept;

struct CaptureSequence
{
   std::vector<SkeletonFrame> frames;
   GaitDirection direction = GaitDirection::Vertical;
   double nominal_fps = 30.0;
   std::string label;

   std::size_t size() const noexcept { return frames.size(); }

   friend bool operator==(const CaptureSequence&, const CaptureSequence&) = default;
};

// Returns `raw` iff it is non-empty, every coordinate is finite and frame
// indices strictly increase. Otherwise throws naming the first violation.
CaptureSequence validate_sequence(CaptureSequence raw);

// Position of `j` in every frame, in frame order.
std::vector<Point3> joint_track(const CaptureSequence& seq, Joint j);

// ----------------------------------------------------------------- topology
//
struct SkeletonEdge
{
   Joint parent;
   Joint child;

   friend bool operator==(const SkeletonEdge&, const SkeletonEdge&) = default;
};

constexpr std::size_t k_edge_count = 24;

// Fixed tree over the 25 joints, rooted at SpineBase.
const std::array<SkeletonEdge, k_edge_count>& skeleton_edges() noexcept;

} // namespace skelcal
