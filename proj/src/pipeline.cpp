#include "skelcal/pipeline.hpp"

#include "skelcal/error.hpp"

#include <cmath>
#include <string>

namespace skelcal
{
namespace
{
   template<typename F> auto run_stage(const char* stage, F&& f)
   {
      try {
         return f();
      } catch(const Error& e) {
         throw Error(e.code(), std::string(stage) + ": " + e.detail());
      }
   }
} // namespace

void validate(const PipelineConfig& config)
{
   if(config.beta_degree < 1 || config.beta_degree > 6)
      throw Error(ErrorCode::InvalidConfig,
                  "beta_degree must be in [1, 6], got " + std::to_string(config.beta_degree));
   if(config.beta_joints.empty())
      throw Error(ErrorCode::InvalidConfig, "beta_joints is empty");
   if(!std::isfinite(config.min_depth_travel_m) || config.min_depth_travel_m < 0.0)
      throw Error(ErrorCode::InvalidConfig, "min_depth_travel_m must be >= 0");
}

void validate(const CalibrationProfile& profile)
{
   tilt::validate(profile.tilt);
   if(profile.gait_count < 1)
      throw Error(ErrorCode::InvalidConfig, "gait_count must be >= 1");
   const auto& beta = profile.beta;
   if(beta.fit_degree != beta.poly.degree())
      throw Error(ErrorCode::InvalidConfig, "fit_degree does not match polynomial degree");
   if(!beta.source_points.empty()
      && static_cast<int>(beta.source_points.size()) <= beta.fit_degree)
      throw Error(ErrorCode::InvalidConfig, "too few beta source points for fit degree");
}

CalibrationProfile identity_profile()
{
   return CalibrationProfile{tilt::TiltParams{}, perspective::zero_model(), 1, "identity"};
}

CalibrationProfile calibrate(std::span<const CaptureSequence> vertical_gaits,
                             double h_k,
                             const PipelineConfig& config,
                             std::string label)
{
   run_stage("config", [&] {
      validate(config);
      if(vertical_gaits.empty()) throw Error(ErrorCode::EmptyInput, "no calibration gaits");
      for(const auto& g : vertical_gaits) {
         if(g.direction != GaitDirection::Vertical)
            throw Error(ErrorCode::WrongDirection, "'" + g.label + "' is not a vertical gait");
         validate_sequence(g);
      }
      return 0;
   });

   const tilt::TiltParams tilt_params = run_stage("tilt", [&] {
      std::vector<double> gait_means;
      gait_means.reserve(vertical_gaits.size());
      for(const auto& g : vertical_gaits) gait_means.push_back(tilt::gait_inclination(g).mean);
      tilt::TiltParams p{tilt::correction_angle(gait_means), h_k};
      tilt::validate(p);
      return p;
   });

   std::vector<CaptureSequence> corrected;
   corrected.reserve(vertical_gaits.size());
   for(const auto& g : vertical_gaits)
      corrected.push_back(tilt::tilt_correct_sequence(g, tilt_params));

   const auto measured = run_stage("perspective", [&] {
      return perspective::mean_perspective_degrees(
          corrected, config.beta_joints, config.min_depth_travel_m);
   });

   auto model = run_stage("fit", [&] {
      return perspective::fit_beta_model(perspective::to_correction_points(measured),
                                         config.beta_degree);
   });

   return CalibrationProfile{tilt_params,
                             std::move(model),
                             static_cast<int>(vertical_gaits.size()),
                             std::move(label)};
}

CaptureSequence apply_profile(const CaptureSequence& seq, const CalibrationProfile& profile)
{
   auto out = perspective::perspective_correct_sequence(
       tilt::tilt_correct_sequence(seq, profile.tilt), profile.beta);
   return out;
}

} // namespace skelcal
