#include "skelcal/synthetic.hpp"

#include "skelcal/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace skelcal::synthetic
{
namespace
{
   constexpr double k_max_fixture_beta = 5.0 * std::numbers::pi / 180.0;
   constexpr int k_fixed_point_iterations = 50;
   constexpr double k_fixed_point_tol     = 1e-10;

   using J = Joint;

   constexpr std::array<Joint, 4> k_left_leg   = {J::HipLeft, J::KneeLeft, J::AnkleLeft, J::FootLeft};
   constexpr std::array<Joint, 4> k_right_leg  = {J::HipRight, J::KneeRight, J::AnkleRight, J::FootRight};
   constexpr std::array<Joint, 6> k_left_arm   = {J::ShoulderLeft, J::ElbowLeft, J::WristLeft,
                                                  J::HandLeft, J::HandTipLeft, J::ThumbLeft};
   constexpr std::array<Joint, 6> k_right_arm  = {J::ShoulderRight, J::ElbowRight, J::WristRight,
                                                  J::HandRight, J::HandTipRight, J::ThumbRight};

   // Rotates a chain in the body's sagittal (y, z) plane about its first joint.
   template<std::size_t N>
   void swing(std::array<Point3, k_joint_count>& pose,
              const std::array<Joint, N>& chain,
              double angle)
   {
      const Point3 pivot = pose[index(chain[0])];
      const double c = std::cos(angle), s = std::sin(angle);
      for(std::size_t i = 1; i < N; ++i) {
         auto& p        = pose[index(chain[i])];
         const double y = p.y - pivot.y;
         const double z = p.z - pivot.z;
         p.y            = pivot.y + c * y - s * z;
         p.z            = pivot.z + s * y + c * z;
      }
   }

   // Body-frame pose at gait phase `phase` (radians), SpineBase at origin.
   std::array<Point3, k_joint_count> body_pose(const BodyTemplate& body, double phase)
   {
      auto pose        = body.rest_offsets;
      const double leg = body.swing_amplitude_rad * std::sin(phase);
      swing(pose, k_left_leg, leg);
      swing(pose, k_right_leg, -leg);
      swing(pose, k_left_arm, -leg);
      swing(pose, k_right_arm, leg);
      return pose;
   }

   enum class Facing { TowardSensor, AlongPlusX };

   // Places a body-frame pose in the sensor frame with SpineBase at (x, ., z)
   // and the lower foot on the ground.
   SkeletonFrame place(const std::array<Point3, k_joint_count>& pose,
                       Facing facing,
                       double x,
                       double z,
                       std::size_t frame_index)
   {
      const double foot_y = std::min(pose[index(J::FootLeft)].y, pose[index(J::FootRight)].y);
      SkeletonFrame f;
      f.frame_index = frame_index;
      for(std::size_t i = 0; i < k_joint_count; ++i) {
         const auto& p = pose[i];
         const double y = p.y - foot_y;
         if(facing == Facing::TowardSensor) // left -> -X, forward -> -Z
            f.joints[i] = {x - p.x, y, z - p.z};
         else // left -> -Z, forward -> +X
            f.joints[i] = {x + p.z, y, z - p.x};
      }
      return f;
   }

   void check_spine_order(const BodyTemplate& body)
   {
      const auto& o = body.rest_offsets;
      const bool ordered = o[index(J::Head)].y > o[index(J::Neck)].y
                           && o[index(J::Neck)].y > o[index(J::SpineShoulder)].y
                           && o[index(J::SpineShoulder)].y > o[index(J::SpineMid)].y
                           && o[index(J::SpineMid)].y > o[index(J::SpineBase)].y;
      if(!ordered) throw Error(ErrorCode::InvalidScenario, "template spine is not ordered upward");
      for(const auto& e : skeleton_edges())
         if(distance(o[index(e.parent)], o[index(e.child)]) <= 0.0)
            throw Error(ErrorCode::InvalidScenario, "template has a zero-length bone");
   }

} // namespace

BodyTemplate BodyTemplate::adult()
{
   BodyTemplate b;
   auto& o = b.rest_offsets;
   auto set = [&o](Joint j, double x, double y, double z) { o[index(j)] = {x, y, z}; };

   set(J::SpineBase, 0.0, 0.0, 0.0);
   set(J::SpineMid, 0.0, 0.30, 0.0);
   set(J::SpineShoulder, 0.0, 0.52, 0.0);
   set(J::Neck, 0.0, 0.60, 0.0);
   set(J::Head, 0.0, 0.75, 0.0);

   for(const double side : {1.0, -1.0}) {
      const bool left = side > 0.0;
      set(left ? J::ShoulderLeft : J::ShoulderRight, side * 0.18, 0.48, 0.0);
      set(left ? J::ElbowLeft : J::ElbowRight, side * 0.20, 0.20, 0.0);
      set(left ? J::WristLeft : J::WristRight, side * 0.21, -0.05, 0.0);
      set(left ? J::HandLeft : J::HandRight, side * 0.21, -0.12, 0.01);
      set(left ? J::HandTipLeft : J::HandTipRight, side * 0.21, -0.20, 0.02);
      set(left ? J::ThumbLeft : J::ThumbRight, side * 0.19, -0.14, 0.05);
      set(left ? J::HipLeft : J::HipRight, side * 0.08, -0.05, 0.0);
      set(left ? J::KneeLeft : J::KneeRight, side * 0.09, -0.48, 0.0);
      set(left ? J::AnkleLeft : J::AnkleRight, side * 0.09, -0.88, -0.02);
      set(left ? J::FootLeft : J::FootRight, side * 0.10, -0.93, 0.10);
   }
   return b;
}

void validate(const DistortionSpec& spec)
{
   if(!(std::abs(spec.alpha) < 0.5))
      throw Error(ErrorCode::InvalidScenario, "|alpha| must be < 0.5 rad");
   if(!std::isfinite(spec.h_k))
      throw Error(ErrorCode::InvalidScenario, "h_k must be finite");
   if(!(spec.noise_std_m >= 0.0) || !std::isfinite(spec.noise_std_m))
      throw Error(ErrorCode::InvalidScenario, "noise_std_m must be >= 0");
}

SkeletonFrame generate_upright_frame(const BodyTemplate& body,
                                     double x,
                                     double z,
                                     std::size_t frame_index)
{
   return place(body.rest_offsets, Facing::TowardSensor, x, z, frame_index);
}

CaptureSequence generate_truth_capture(const BodyTemplate& body,
                                       GaitDirection direction,
                                       int frames,
                                       double z_start,
                                       double z_end)
{
   if(frames < 2)
      throw Error(ErrorCode::InvalidScenario, "need at least 2 frames, got " + std::to_string(frames));
   if(!(body.stride_length_m > 0.0) || !(body.step_frequency_hz > 0.0))
      throw Error(ErrorCode::InvalidScenario, "stride length and step frequency must be positive");
   check_spine_order(body);

   CaptureSequence seq;
   seq.direction   = direction;
   seq.nominal_fps = 30.0;
   seq.frames.reserve(std::size_t(frames));

   const double last = double(frames - 1);
   if(direction == GaitDirection::Vertical) {
      if(!(z_start >= z_end) || !(z_end >= 0.8))
         throw Error(ErrorCode::InvalidScenario,
                     "vertical gait needs z_start >= z_end >= 0.8, got "
                         + std::to_string(z_start) + " -> " + std::to_string(z_end));
      seq.label = "synthetic-vertical";
      for(int k = 0; k < frames; ++k) {
         const double walked = (z_start - z_end) * double(k) / last;
         const double phase  = 2.0 * std::numbers::pi * walked / body.stride_length_m;
         seq.frames.push_back(place(body_pose(body, phase),
                                    Facing::TowardSensor,
                                    0.0,
                                    z_start - walked,
                                    std::size_t(k)));
      }
   } else {
      if(!(z_start >= 0.8))
         throw Error(ErrorCode::InvalidScenario, "horizontal gait depth must be >= 0.8");
      seq.label           = "synthetic-horizontal";
      const double speed  = 0.5 * body.stride_length_m * body.step_frequency_hz;
      const double travel = speed * last / seq.nominal_fps;
      for(int k = 0; k < frames; ++k) {
         const double walked = travel * double(k) / last;
         const double phase  = 2.0 * std::numbers::pi * walked / body.stride_length_m;
         seq.frames.push_back(place(body_pose(body, phase),
                                    Facing::AlongPlusX,
                                    walked - 0.5 * travel,
                                    z_start,
                                    std::size_t(k)));
      }
   }
   return seq;
}

CaptureSequence distort_tilt(const CaptureSequence& seq, const DistortionSpec& spec)
{
   validate(spec);
   const double s = std::sin(spec.alpha);
   const double c = std::cos(spec.alpha);

   CaptureSequence out = seq;
   for(auto& f : out.frames)
      for(auto& p : f.joints) {
         if(spec.tilt_model == TiltModel::ShearInverse) {
            const double y = p.y - p.z * s - spec.h_k;
            p.z            = p.z - y * s;
            p.y            = y;
         } else {
            const double y = c * p.y + s * p.z;
            const double z = -s * p.y + c * p.z;
            p.y            = y - spec.h_k;
            p.z            = z;
         }
      }
   return out;
}

CaptureSequence distort_perspective(const CaptureSequence& seq, const Polynomial& beta_poly)
{
   CaptureSequence out = seq;
   for(auto& f : out.frames)
      for(auto& p : f.joints) {
         if(!(std::abs(polyeval(beta_poly, p.y)) < k_max_fixture_beta))
            throw Error(ErrorCode::InvalidScenario,
                        "beta(" + std::to_string(p.y) + ") exceeds 5 degrees");
         double y_raw   = p.y;
         bool converged = false;
         for(int it = 0; it < k_fixed_point_iterations; ++it) {
            const double next = p.y - p.z * std::tan(polyeval(beta_poly, y_raw));
            const double step = next - y_raw;
            y_raw             = next;
            if(std::abs(step) < k_fixed_point_tol) {
               converged = true;
               break;
            }
         }
         if(!converged)
            throw Error(ErrorCode::FixedPointDivergence,
                        "frame " + std::to_string(f.frame_index) + " y = " + std::to_string(p.y));
         p.y = y_raw;
      }
   return out;
}

CaptureSequence add_noise(const CaptureSequence& seq, double std_m, std::uint64_t seed)
{
   if(!(std_m >= 0.0) || !std::isfinite(std_m))
      throw Error(ErrorCode::InvalidScenario, "noise std must be >= 0");
   if(std_m == 0.0) return seq;

   std::mt19937_64 rng(seed);
   std::normal_distribution<double> noise(0.0, std_m);
   CaptureSequence out = seq;
   for(auto& f : out.frames)
      for(auto& p : f.joints) {
         p.x += noise(rng);
         p.y += noise(rng);
         p.z += noise(rng);
      }
   return out;
}

CaptureSequence distort(const CaptureSequence& truth, const DistortionSpec& spec)
{
   validate(spec);
   auto raw = add_noise(distort_tilt(distort_perspective(truth, spec.beta_poly), spec),
                        spec.noise_std_m,
                        spec.seed);
   raw.label = truth.label + "-raw";
   return raw;
}

} // namespace skelcal::synthetic
