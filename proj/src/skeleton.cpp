#include "skelcal/skeleton.hpp"

#include "skelcal/error.hpp"

#include <cmath>
#include <string>

namespace skelcal
{
namespace
{
   constexpr std::array<std::string_view, k_joint_count> k_joint_names = {
       "SpineBase",     "SpineMid",    "Neck",          "Head",
       "ShoulderLeft",  "ElbowLeft",   "WristLeft",     "HandLeft",
       "ShoulderRight", "ElbowRight",  "WristRight",    "HandRight",
       "HipLeft",       "KneeLeft",    "AnkleLeft",     "FootLeft",
       "HipRight",      "KneeRight",   "AnkleRight",    "FootRight",
       "SpineShoulder", "HandTipLeft", "ThumbLeft",     "HandTipRight",
       "ThumbRight"};

   constexpr SkeletonEdge edge(Joint a, Joint b) { return {a, b}; }

   using J = Joint;
   constexpr std::array<SkeletonEdge, k_edge_count> k_edges = {
       // spine
       edge(J::SpineBase, J::SpineMid),
       edge(J::SpineMid, J::SpineShoulder),
       edge(J::SpineShoulder, J::Neck),
       edge(J::Neck, J::Head),
       // left arm
       edge(J::SpineShoulder, J::ShoulderLeft),
       edge(J::ShoulderLeft, J::ElbowLeft),
       edge(J::ElbowLeft, J::WristLeft),
       edge(J::WristLeft, J::HandLeft),
       edge(J::HandLeft, J::HandTipLeft),
       edge(J::HandLeft, J::ThumbLeft),
       // right arm
       edge(J::SpineShoulder, J::ShoulderRight),
       edge(J::ShoulderRight, J::ElbowRight),
       edge(J::ElbowRight, J::WristRight),
       edge(J::WristRight, J::HandRight),
       edge(J::HandRight, J::HandTipRight),
       edge(J::HandRight, J::ThumbRight),
       // legs
       edge(J::SpineBase, J::HipLeft),
       edge(J::HipLeft, J::KneeLeft),
       edge(J::KneeLeft, J::AnkleLeft),
       edge(J::AnkleLeft, J::FootLeft),
       edge(J::SpineBase, J::HipRight),
       edge(J::HipRight, J::KneeRight),
       edge(J::KneeRight, J::AnkleRight),
       edge(J::AnkleRight, J::FootRight),
   };

   constexpr std::array<Joint, k_joint_count> make_all_joints()
   {
      std::array<Joint, k_joint_count> out{};
      for(std::size_t i = 0; i < k_joint_count; ++i) out[i] = Joint(i);
      return out;
   }
   constexpr auto k_all_joints = make_all_joints();

} // namespace

std::string_view joint_name(Joint j) noexcept { return k_joint_names[index(j)]; }

std::optional<Joint> joint_from_name(std::string_view name) noexcept
{
   for(std::size_t i = 0; i < k_joint_count; ++i)
      if(k_joint_names[i] == name) return Joint(i);
   return std::nullopt;
}

std::optional<Joint> joint_from_index(long long value) noexcept
{
   if(value < 0 || value >= static_cast<long long>(k_joint_count)) return std::nullopt;
   return Joint(value);
}

const std::array<Joint, k_joint_count>& all_joints() noexcept { return k_all_joints; }

bool Point3::is_finite() const noexcept
{
   return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
}

double distance(const Point3& a, const Point3& b) noexcept
{
   const auto d = a - b;
   return std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z);
}

SkeletonFrame make_frame(std::size_t frame_index, std::span<const Point3> points)
{
   if(points.size() != k_joint_count)
      throw Error(ErrorCode::WrongJointCount,
                  "frame " + std::to_string(frame_index) + " has "
                      + std::to_string(points.size()) + " joints, expected 25");
   SkeletonFrame f;
   f.frame_index = frame_index;
   std::copy(points.begin(), points.end(), f.joints.begin());
   return f;
}

std::string_view to_string(GaitDirection d) noexcept
{
   return d == GaitDirection::Vertical ? "vertical" : "horizontal";
}

std::optional<GaitDirection> direction_from_string(std::string_view s) noexcept
{
   if(s == "vertical") return GaitDirection::Vertical;
   if(s == "horizontal") return GaitDirection::Horizontal;
   return std::nullopt;
}

CaptureSequence validate_sequence(CaptureSequence raw)
{
   if(raw.frames.empty()) throw Error(ErrorCode::EmptySequence, "sequence has no frames");

   for(std::size_t k = 0; k < raw.frames.size(); ++k) {
      const auto& f = raw.frames[k];
      if(k > 0 && f.frame_index <= raw.frames[k - 1].frame_index)
         throw Error(ErrorCode::NonMonotonicFrameIndex,
                     "frame index " + std::to_string(f.frame_index) + " follows "
                         + std::to_string(raw.frames[k - 1].frame_index));

      for(std::size_t j = 0; j < k_joint_count; ++j) {
         const auto& p = f.joints[j];
         const char* field = !std::isfinite(p.x)   ? "x"
                             : !std::isfinite(p.y) ? "y"
                             : !std::isfinite(p.z) ? "z"
                                                   : nullptr;
         if(field != nullptr)
            throw Error(ErrorCode::NonFiniteCoordinate,
                        "frame " + std::to_string(f.frame_index) + ", joint "
                            + std::to_string(j) + ", " + field);
      }
   }
   return raw;
}

std::vector<Point3> joint_track(const CaptureSequence& seq, Joint j)
{
   std::vector<Point3> out;
   out.reserve(seq.frames.size());
   for(const auto& f : seq.frames) out.push_back(f[j]);
   return out;
}

const std::array<SkeletonEdge, k_edge_count>& skeleton_edges() noexcept { return k_edges; }

} // namespace skelcal
