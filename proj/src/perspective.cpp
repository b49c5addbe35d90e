#include "skelcal/perspective.hpp"

#include "skelcal/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace skelcal::perspective
{
namespace
{
   constexpr double k_beta_limit = std::numbers::pi / 2.0 - 1e-6;

   std::string joint_str(Joint j)
   {
      return std::to_string(index(j)) + " (" + std::string(joint_name(j)) + ")";
   }
} // namespace

const std::vector<Joint>& default_beta_joints()
{
   static const std::vector<Joint> joints = {Joint::Head,
                                             Joint::Neck,
                                             Joint::SpineShoulder,
                                             Joint::SpineMid,
                                             Joint::SpineBase,
                                             Joint::KneeLeft,
                                             Joint::KneeRight,
                                             Joint::AnkleLeft,
                                             Joint::AnkleRight};
   return joints;
}

double joint_perspective_degree(const CaptureSequence& seq, Joint j, double min_depth_travel)
{
   if(seq.direction != GaitDirection::Vertical)
      throw Error(ErrorCode::WrongDirection, "'" + seq.label + "' is not a vertical gait");
   if(seq.frames.size() < 2)
      throw Error(ErrorCode::InsufficientFrames,
                  "'" + seq.label + "' needs at least 2 frames for perspective degree");

   const auto& first = seq.frames.front()[j];
   const auto& last  = seq.frames.back()[j];
   const double dz   = first.z - last.z;
   if(std::abs(dz) <= min_depth_travel)
      throw Error(ErrorCode::InsufficientDepthTravel,
                  "joint " + joint_str(j) + " of '" + seq.label + "' travels "
                      + std::to_string(dz) + " m in depth");
   return std::atan((first.y - last.y) / dz);
}

std::vector<BetaPoint> mean_perspective_degrees(std::span<const CaptureSequence> seqs,
                                                std::span<const Joint> joints,
                                                double min_depth_travel)
{
   if(seqs.empty()) throw Error(ErrorCode::EmptyInput, "no calibration gaits");
   for(const auto& s : seqs)
      if(s.direction != GaitDirection::Vertical)
         throw Error(ErrorCode::WrongDirection, "'" + s.label + "' is not a vertical gait");

   std::vector<BetaPoint> out;
   out.reserve(joints.size());
   for(const auto j : joints) {
      std::vector<double> betas;
      for(const auto& s : seqs) {
         try {
            betas.push_back(joint_perspective_degree(s, j, min_depth_travel));
         } catch(const Error& e) {
            if(e.code() != ErrorCode::InsufficientDepthTravel
               && e.code() != ErrorCode::InsufficientFrames)
               throw;
         }
      }
      if(betas.empty())
         throw Error(ErrorCode::NoUsableGaits, "joint " + joint_str(j));

      double y_sum = 0.0;
      std::size_t y_count = 0;
      for(const auto& s : seqs)
         for(const auto& f : s.frames) {
            y_sum += f[j].y;
            ++y_count;
         }

      out.push_back({j, y_sum / double(y_count), arithmetic_mean(betas)});
   }

   std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      return a.height_y > b.height_y;
   });
   return out;
}

std::vector<BetaPoint> to_correction_points(std::span<const BetaPoint> measured)
{
   std::vector<BetaPoint> out(measured.begin(), measured.end());
   for(auto& p : out) p.beta = -p.beta;
   return out;
}

BetaModel fit_beta_model(std::span<const BetaPoint> points, int degree)
{
   std::vector<FitPoint> fit;
   fit.reserve(points.size());
   for(const auto& p : points) {
      if(!std::isfinite(p.beta) || std::abs(p.beta) >= std::numbers::pi / 2.0)
         throw Error(ErrorCode::BetaOutOfRange,
                     "beta point for joint " + joint_str(p.joint) + " is "
                         + std::to_string(p.beta));
      fit.push_back({p.height_y, p.beta});
   }

   BetaModel model;
   model.poly          = polyfit_least_squares(fit, degree);
   model.fit_degree    = degree;
   model.source_points = std::vector<BetaPoint>(points.begin(), points.end());
   return model;
}

BetaModel zero_model() { return BetaModel{Polynomial(), 0, {}}; }

Point3 perspective_correct_point(const Point3& p, const BetaModel& model)
{
   const double beta = polyeval(model.poly, p.y);
   if(!(std::abs(beta) < k_beta_limit))
      throw Error(ErrorCode::BetaOutOfRange,
                  "P_beta(" + std::to_string(p.y) + ") = " + std::to_string(beta));
   return {p.x, p.y + p.z * std::tan(beta), p.z};
}

CaptureSequence perspective_correct_sequence(const CaptureSequence& seq, const BetaModel& model)
{
   CaptureSequence out = seq;
   for(auto& f : out.frames)
      for(auto& p : f.joints) p = perspective_correct_point(p, model);
   return out;
}

} // namespace skelcal::perspective
