// skelcal: calibrate depth-sensor skeleton captures from the command line.
//
//   skelcal synth     --direction vertical --frames 90 --tilt-deg 7 ... --out-raw raw.csv
//   skelcal calibrate --sensor-height 0.75 --degree 2 --out-profile p.json gait*.csv
//   skelcal apply     --profile p.json --in raw.csv --out calibrated.csv
//   skelcal diagnose  --in raw.csv [--profile p.json] --report both --out report.csv

#include "skelcal/diagnostics.hpp"
#include "skelcal/error.hpp"
#include "skelcal/io.hpp"
#include "skelcal/pipeline.hpp"
#include "skelcal/synthetic.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace
{
using namespace skelcal;

constexpr double k_deg_to_rad = std::numbers::pi / 180.0;

std::vector<double> parse_coeffs(const std::string& csv)
{
   std::vector<double> out;
   std::stringstream ss(csv);
   std::string item;
   while(std::getline(ss, item, ',')) {
      try {
         std::size_t used = 0;
         out.push_back(std::stod(item, &used));
         if(used != item.size()) throw std::invalid_argument(item);
      } catch(const std::exception&) {
         throw Error(ErrorCode::InvalidConfig, "bad coefficient '" + item + "'");
      }
   }
   if(out.empty()) throw Error(ErrorCode::InvalidConfig, "no beta coefficients given");
   return out;
}

std::filesystem::path with_suffix(const std::filesystem::path& out, const std::string& tag)
{
   auto p = out;
   p.replace_filename(out.stem().string() + "_" + tag + out.extension().string());
   return p;
}

struct SynthArgs
{
   std::string direction = "vertical";
   int frames            = 90;
   double tilt_deg       = 7.0;
   std::string tilt_model = "shear";
   double sensor_height  = 0.75;
   std::string beta_coeffs = "0";
   double noise_std      = 0.0;
   std::uint64_t seed    = 1;
   double z_start        = 4.5;
   double z_end          = 1.5;
   std::string out_truth;
   std::string out_raw;
};

int run_synth(const SynthArgs& a)
{
   const auto dir = direction_from_string(a.direction);
   if(!dir) throw Error(ErrorCode::InvalidConfig, "unknown direction '" + a.direction + "'");

   synthetic::DistortionSpec spec;
   spec.tilt_model  = a.tilt_model == "rotation" ? synthetic::TiltModel::Rotation
                                                 : synthetic::TiltModel::ShearInverse;
   spec.alpha       = a.tilt_deg * k_deg_to_rad;
   spec.h_k         = a.sensor_height;
   spec.beta_poly   = Polynomial(parse_coeffs(a.beta_coeffs));
   spec.noise_std_m = a.noise_std;
   spec.seed        = a.seed;

   const auto truth = synthetic::generate_truth_capture(
       synthetic::BodyTemplate::adult(), *dir, a.frames, a.z_start, a.z_end);
   const auto raw = synthetic::distort(truth, spec);

   if(!a.out_truth.empty()) io::write_capture(truth, a.out_truth);
   io::write_capture(raw, a.out_raw);
   std::cout << "wrote " << raw.size() << " frames to " << a.out_raw << "\n";
   return 0;
}

int run_calibrate(double h_k, int degree, const std::string& label, const std::string& out_profile,
                  const std::vector<std::string>& captures)
{
   std::vector<CaptureSequence> gaits;
   for(const auto& path : captures) gaits.push_back(io::read_capture(path, GaitDirection::Vertical));

   PipelineConfig config;
   config.beta_degree = degree;
   const auto profile = calibrate(gaits, h_k, config, label);
   io::write_profile(profile, out_profile);

   std::cout << "alpha_g = " << profile.tilt.alpha_g << " rad ("
             << profile.tilt.alpha_g / k_deg_to_rad << " deg), h_k = " << profile.tilt.h_k
             << " m, " << profile.gait_count << " gaits\n";
   return 0;
}

int run_apply(const std::string& profile_path, const std::string& in, const std::string& out)
{
   const auto profile = io::read_profile(profile_path);
   auto seq           = io::read_capture(in, GaitDirection::Vertical);
   if(seq.label.find("calibrated") != std::string::npos)
      std::cerr << "warning: '" << in
                << "' looks already calibrated; applying again adds the sensor height twice\n";
   io::write_capture(apply_profile(seq, profile), out);
   return 0;
}

int run_diagnose(const std::string& in, const std::string& profile_path,
                 const std::string& report, const std::string& out)
{
   if(report != "ydiff" && report != "bones" && report != "both")
      throw Error(ErrorCode::InvalidConfig, "unknown report '" + report + "'");

   auto seq = io::read_capture(in, GaitDirection::Vertical);
   if(!profile_path.empty()) seq = apply_profile(seq, io::read_profile(profile_path));

   const std::filesystem::path out_path(out);
   if(report == "ydiff" || report == "both") {
      const auto& joints = perspective::default_beta_joints();
      const auto series  = diagnostics::y_diff_to_last(seq, joints);
      io::write_text_file_atomic(report == "both" ? with_suffix(out_path, "ydiff") : out_path,
                                 io::format_ydiff_report(seq, series));
      std::cout << "max |y - y_last| = " << diagnostics::max_abs_diff(series) << " m\n";
   }
   if(report == "bones" || report == "both") {
      const auto stability = diagnostics::bone_length_stability(seq);
      io::write_text_file_atomic(report == "both" ? with_suffix(out_path, "bones") : out_path,
                                 io::format_bones_report(stability));
      std::cout << "max bone-length std = " << stability.max_std_m << " m\n";
   }
   return 0;
}

} // namespace

int main(int argc, char** argv)
{
   CLI::App app{"Depth-sensor skeleton calibration"};
   app.require_subcommand(1);

   SynthArgs synth;
   auto* synth_cmd = app.add_subcommand("synth", "Generate a ground-truth and a distorted capture");
   synth_cmd->add_option("--direction", synth.direction)->check(CLI::IsMember({"vertical", "horizontal"}));
   synth_cmd->add_option("--frames", synth.frames);
   synth_cmd->add_option("--tilt-deg", synth.tilt_deg);
   synth_cmd->add_option("--tilt-model", synth.tilt_model)->check(CLI::IsMember({"shear", "rotation"}));
   synth_cmd->add_option("--sensor-height", synth.sensor_height);
   synth_cmd->add_option("--beta-coeffs", synth.beta_coeffs, "P_beta coefficients (rad), ascending");
   synth_cmd->add_option("--noise-std", synth.noise_std, "Gaussian noise std (m)");
   synth_cmd->add_option("--seed", synth.seed);
   synth_cmd->add_option("--z-start", synth.z_start);
   synth_cmd->add_option("--z-end", synth.z_end);
   synth_cmd->add_option("--out-truth", synth.out_truth);
   synth_cmd->add_option("--out-raw", synth.out_raw)->required();

   double h_k = 0.0;
   int degree = 2;
   std::string label, out_profile;
   std::vector<std::string> captures;
   auto* cal_cmd = app.add_subcommand("calibrate", "Estimate a profile from vertical gaits");
   cal_cmd->add_option("--sensor-height", h_k, "Sensor height above ground (m)")->required();
   cal_cmd->add_option("--degree", degree, "P_beta degree (1-6)");
   cal_cmd->add_option("--label", label);
   cal_cmd->add_option("--out-profile", out_profile)->required();
   cal_cmd->add_option("captures", captures)->required();

   std::string profile_path, in_path, out_path;
   auto* apply_cmd = app.add_subcommand("apply", "Apply a profile to a capture");
   apply_cmd->add_option("--profile", profile_path)->required();
   apply_cmd->add_option("--in", in_path)->required();
   apply_cmd->add_option("--out", out_path)->required();

   std::string diag_in, diag_profile, diag_report = "both", diag_out;
   auto* diag_cmd = app.add_subcommand("diagnose", "Write consistency reports for a capture");
   diag_cmd->add_option("--in", diag_in)->required();
   diag_cmd->add_option("--profile", diag_profile);
   diag_cmd->add_option("--report", diag_report)->check(CLI::IsMember({"ydiff", "bones", "both"}));
   diag_cmd->add_option("--out", diag_out)->required();

   try {
      app.parse(argc, argv);
   } catch(const CLI::ParseError& e) {
      return app.exit(e, std::cout, std::cerr);
   }

   try {
      if(*synth_cmd) return run_synth(synth);
      if(*cal_cmd) return run_calibrate(h_k, degree, label, out_profile, captures);
      if(*apply_cmd) return run_apply(profile_path, in_path, out_path);
      if(*diag_cmd) return run_diagnose(diag_in, diag_profile, diag_report, diag_out);
   } catch(const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
   } catch(const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
   }
   return 1;
}
