// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "skelcal/diagnostics.hpp"
#include "skelcal/io.hpp"
#include "skelcal/numerics.hpp"
#include "skelcal/pipeline.hpp"
#include "skelcal/synthetic.hpp"
#include "skelcal/tilt.hpp"

#include "test_support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <unistd.h>

using namespace skelcal;

namespace
{
// Pinned tolerances.
constexpr double k_ac1_max_error_m       = 1e-9;
constexpr double k_ac1_max_seconds       = 1.0;
constexpr double k_ac2_max_error_m       = 1e-6;
constexpr double k_ac2_max_seconds       = 1.0;
constexpr double k_ac3_shear_tol_rad     = 1e-6;
constexpr double k_ac3_rotation_tol_deg  = 0.25;
constexpr double k_ac4_max_ydiff_m       = 0.05;
constexpr double k_ac4_max_seconds       = 5.0;
constexpr double k_ac5_min_ratio         = 5.0;
constexpr double k_ac6_min_edge_dy_m     = 0.05;
constexpr double k_ac6_slack_m           = 1e-12;
constexpr double k_ac7_fit_tol           = 1e-9;
constexpr double k_ac7_geomean_rel_tol   = 1e-12;
constexpr double k_ac8_capture_tol_m     = 1e-9;

// Fixture.
constexpr double k_alpha_rad   = 0.12217;
constexpr double k_alpha_deg   = 7.0;
constexpr double k_h_k         = 0.75;
constexpr int k_frames         = 90;
constexpr int k_gaits          = 10;
constexpr double k_beta_max    = 3.0 * std::numbers::pi / 180.0;
constexpr double k_beta_height = 1.75;
constexpr double k_noise_std_m = 0.005;
// mpmath: atan(sin 0.12217)
constexpr double k_ac3_expected = 0.121268342840342;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
   return std::chrono::duration<double>(Clock::now() - t0).count();
}

const synthetic::BodyTemplate& body()
{
   static const auto b = synthetic::BodyTemplate::adult();
   return b;
}

CaptureSequence vertical_walk(double z_start, double z_end)
{
   return synthetic::generate_truth_capture(body(), GaitDirection::Vertical, k_frames, z_start, z_end);
}

synthetic::DistortionSpec fixture_spec(double noise, synthetic::TiltModel model = synthetic::TiltModel::ShearInverse,
                                       double alpha = k_alpha_rad, Polynomial beta = Polynomial({0.0, k_beta_max / k_beta_height}))
{
   synthetic::DistortionSpec spec;
   spec.tilt_model  = model;
   spec.alpha       = alpha;
   spec.h_k         = k_h_k;
   spec.beta_poly   = std::move(beta);
   spec.noise_std_m = noise;
   return spec;
}

std::vector<CaptureSequence> calibration_gaits(const synthetic::DistortionSpec& base)
{
   std::vector<CaptureSequence> out;
   for(int b = 0; b < k_gaits; ++b) {
      auto spec = base;
      spec.seed = 100 + std::uint64_t(b);
      out.push_back(synthetic::distort(vertical_walk(4.5 - 0.07 * b, 1.5 + 0.03 * b), spec));
   }
   return out;
}

struct HeldOut
{
   CaptureSequence truth;
   CaptureSequence raw;
};

HeldOut held_out_gait(const synthetic::DistortionSpec& base)
{
   auto spec = base;
   spec.seed = 999;
   HeldOut h{vertical_walk(4.6, 1.4), {}};
   h.raw = synthetic::distort(h.truth, spec);
   return h;
}

double max_ydiff(const CaptureSequence& seq)
{
   return diagnostics::max_abs_diff(diagnostics::y_diff_to_last(seq, perspective::default_beta_joints()));
}

struct Outcome
{
   bool pass;
   std::string detail;
};

std::string fmt(const char* pattern, auto... args)
{
   char buf[512];
   std::snprintf(buf, sizeof buf, pattern, args...);
   return buf;
}

Outcome ac1_shear_round_trip()
{
   const auto t0    = Clock::now();
   const auto truth = vertical_walk(4.5, 1.5);
   const auto spec  = fixture_spec(0.0, synthetic::TiltModel::ShearInverse, k_alpha_rad, Polynomial());
   const auto back  = tilt::tilt_correct_sequence(synthetic::distort_tilt(truth, spec), {k_alpha_rad, k_h_k});
   const double err = testing::max_coordinate_error(back, truth);
   const double dt  = seconds_since(t0);
   return {err <= k_ac1_max_error_m && dt < k_ac1_max_seconds,
           fmt("max error %.3e m (<= %.0e), %.3f s (< %.0f)", err, k_ac1_max_error_m, dt, k_ac1_max_seconds)};
}

Outcome ac2_perspective_round_trip()
{
   const auto t0    = Clock::now();
   const auto truth = vertical_walk(4.5, 1.5);
   const Polynomial beta({0.035, -0.02});
   const perspective::BetaModel model{beta, beta.degree(), {}};
   const auto back = perspective::perspective_correct_sequence(synthetic::distort_perspective(truth, beta), model);
   double err = 0.0;
   for(std::size_t k = 0; k < truth.frames.size(); ++k)
      for(std::size_t j = 0; j < k_joint_count; ++j)
         err = std::max(err, std::abs(back.frames[k].joints[j].y - truth.frames[k].joints[j].y));
   const double dt = seconds_since(t0);
   return {err <= k_ac2_max_error_m && dt < k_ac2_max_seconds,
           fmt("max |dy| %.3e m (<= %.0e), %.3f s (< %.0f)", err, k_ac2_max_error_m, dt, k_ac2_max_seconds)};
}

Outcome ac3_tilt_recovery()
{
   const auto shear = calibrate(
       calibration_gaits(fixture_spec(0.0, synthetic::TiltModel::ShearInverse, k_alpha_rad, Polynomial())), k_h_k);
   const double shear_err = std::abs(shear.tilt.alpha_g - k_ac3_expected);

   const double alpha_7 = k_alpha_deg * std::numbers::pi / 180.0;
   const auto rotation  = calibrate(
       calibration_gaits(fixture_spec(0.0, synthetic::TiltModel::Rotation, alpha_7, Polynomial())), k_h_k);
   const double rot_deg = rotation.tilt.alpha_g * 180.0 / std::numbers::pi;
   const double rot_err = std::abs(rot_deg - k_alpha_deg);

   return {shear_err <= k_ac3_shear_tol_rad && rot_err <= k_ac3_rotation_tol_deg,
           fmt("shear alpha_g %.9f rad (|err| %.2e <= %.0e); rotation %.4f deg (|err| %.4f <= %.2f)",
               shear.tilt.alpha_g, shear_err, k_ac3_shear_tol_rad, rot_deg, rot_err, k_ac3_rotation_tol_deg)};
}

struct EndToEnd
{
   double raw, tilt_only, full, seconds;
};

EndToEnd run_end_to_end(double noise)
{
   const auto t0      = Clock::now();
   const auto spec    = fixture_spec(noise);
   const auto profile = calibrate(calibration_gaits(spec), k_h_k);
   const auto held    = held_out_gait(spec);
   auto tilt_only     = profile;
   tilt_only.beta     = perspective::zero_model();
   EndToEnd r{max_ydiff(held.raw), max_ydiff(apply_profile(held.raw, tilt_only)),
              max_ydiff(apply_profile(held.raw, profile)), 0.0};
   r.seconds = seconds_since(t0);
   return r;
}

Outcome ac4_end_to_end(const EndToEnd& r)
{
   return {r.full <= k_ac4_max_ydiff_m && r.seconds < k_ac4_max_seconds,
           fmt("held-out max |y - y_last| %.4f m (<= %.2f), %.3f s (< %.0f)", r.full, k_ac4_max_ydiff_m, r.seconds,
               k_ac4_max_seconds)};
}

Outcome ac5_monotone(const EndToEnd& r)
{
   const double ratio = r.raw / r.full;
   return {r.raw >= r.tilt_only && r.tilt_only >= r.full && ratio >= k_ac5_min_ratio,
           fmt("raw %.4f >= tilt %.4f >= full %.4f m, raw/full %.1f (>= %.0f)", r.raw, r.tilt_only, r.full, ratio,
               k_ac5_min_ratio)};
}

Outcome ac6_bone_stability()
{
   const auto spec    = fixture_spec(0.0);
   const auto profile = calibrate(calibration_gaits(spec), k_h_k);
   const auto held    = held_out_gait(spec);
   const auto before  = diagnostics::bone_length_stability(held.raw);
   const auto after   = diagnostics::bone_length_stability(apply_profile(held.raw, profile));

   int checked = 0, worse = 0;
   double worst_gap = -1.0;
   for(std::size_t e = 0; e < k_edge_count; ++e) {
      const auto edge = skeleton_edges()[e];
      double dy       = 0.0;
      for(const auto& f : held.truth.frames) dy += std::abs(f[edge.parent].y - f[edge.child].y);
      dy /= double(held.truth.frames.size());
      if(dy <= k_ac6_min_edge_dy_m) continue;
      ++checked;
      const double gap = after.edges[e].std_length_m - before.edges[e].std_length_m;
      worst_gap        = std::max(worst_gap, gap);
      if(gap > k_ac6_slack_m) ++worse;
   }
   return {checked > 0 && worse == 0,
           fmt("%d edges with |dY| > %.2f m, %d got less stable (max std change %+.3e m)", checked,
               k_ac6_min_edge_dy_m, worse, worst_gap)};
}

Outcome ac7_numerics()
{
   std::mt19937_64 rng(7);
   std::uniform_real_distribution<double> value(1e-3, 1e3), coeff(-2.0, 2.0), xs(-3.0, 3.0);
   std::uniform_int_distribution<int> len(1, 50), deg(0, 2);

   int amgm_fail = 0;
   double geo_err = 0.0;
   for(int t = 0; t < 1000; ++t) {
      std::vector<double> v(std::size_t(len(rng)));
      for(auto& x : v) x = value(rng);
      const double am = arithmetic_mean(v), gm = geometric_mean(v);
      if(gm > am * (1.0 + 1e-15)) ++amgm_fail;
      double direct = 1.0;
      for(const auto x : v) direct *= std::pow(x, 1.0 / double(v.size()));
      geo_err = std::max(geo_err, std::abs(gm - direct) / direct);
   }

   double fit_err = 0.0;
   for(int t = 0; t < 200; ++t) {
      const int d = deg(rng);
      std::vector<double> c(std::size_t(d) + 1);
      for(auto& x : c) x = coeff(rng);
      std::vector<FitPoint> pts;
      for(int i = 0; i < 12; ++i) {
         const double x = xs(rng);
         pts.push_back({x, testing::power_sum(c, x)});
      }
      const auto fitted = polyfit_least_squares(pts, d).coefficients();
      const auto oracle = testing::normal_equations_fit(pts, d);
      for(std::size_t i = 0; i < c.size(); ++i) {
         fit_err = std::max(fit_err, std::abs(fitted[i] - oracle[i]));
         fit_err = std::max(fit_err, std::abs(fitted[i] - c[i]));
      }
   }
   return {amgm_fail == 0 && fit_err <= k_ac7_fit_tol && geo_err <= k_ac7_geomean_rel_tol,
           fmt("AM-GM violations %d/1000; polyfit max coeff error %.2e (<= %.0e); geomean log vs direct %.2e (<= %.0e)",
               amgm_fail, fit_err, k_ac7_fit_tol, geo_err, k_ac7_geomean_rel_tol)};
}

Outcome ac8_format_determinism()
{
   namespace fs  = std::filesystem;
   const auto dir = fs::temp_directory_path() / ("skelcal_acceptance_" + std::to_string(::getpid()));
   fs::create_directories(dir);

   const auto spec = fixture_spec(k_noise_std_m);
   auto s          = spec;
   s.seed          = 42;
   const auto raw  = synthetic::distort(vertical_walk(4.5, 1.5), s);
   io::write_capture(raw, dir / "a.csv");
   const auto back = io::read_capture(dir / "a.csv", GaitDirection::Vertical);
   io::write_capture(back, dir / "b.csv");
   const bool capture_bytes = io::read_text_file(dir / "a.csv") == io::read_text_file(dir / "b.csv");
   const double capture_err = testing::max_coordinate_error(back, raw);

   const auto profile = calibrate(calibration_gaits(spec), k_h_k, {}, "acceptance");
   io::write_profile(profile, dir / "p.json");
   const auto profile_back = io::read_profile(dir / "p.json");
   io::write_profile(profile_back, dir / "q.json");
   const bool profile_exact = profile_back == profile;
   const bool profile_bytes = io::read_text_file(dir / "p.json") == io::read_text_file(dir / "q.json");
   fs::remove_all(dir);

   return {capture_bytes && capture_err <= k_ac8_capture_tol_m && profile_exact && profile_bytes,
           fmt("capture bytes %s, round-trip %.2e m (<= %.0e); profile fields %s, bytes %s",
               capture_bytes ? "identical" : "DIFFER", capture_err, k_ac8_capture_tol_m,
               profile_exact ? "exact" : "DIFFER", profile_bytes ? "identical" : "DIFFER")};
}

} // namespace

int main()
{
   int failures = 0;
   const auto report = [&](const char* id, const char* name, const std::function<Outcome()>& run) {
      Outcome o;
      try {
         o = run();
      } catch(const std::exception& e) {
         o = {false, std::string("threw: ") + e.what()};
      }
      if(!o.pass) ++failures;
      std::printf("[%s] %s %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
   };

   EndToEnd e2e{};
   bool e2e_ok = true;
   std::string e2e_error;
   try {
      e2e = run_end_to_end(k_noise_std_m);
   } catch(const std::exception& e) {
      e2e_ok    = false;
      e2e_error = e.what();
   }
   const auto e2e_outcome = [&](auto check) {
      return [&, check]() -> Outcome {
         if(!e2e_ok) return {false, "threw: " + e2e_error};
         return check(e2e);
      };
   };

   report("AC1", "shear round-trip", ac1_shear_round_trip);
   report("AC2", "perspective round-trip", ac2_perspective_round_trip);
   report("AC3", "tilt recovery", ac3_tilt_recovery);
   report("AC4", "end-to-end 5 cm", e2e_outcome(ac4_end_to_end));
   report("AC5", "monotone improvement", e2e_outcome(ac5_monotone));
   report("AC6", "bone-length stability", ac6_bone_stability);
   report("AC7", "numerics properties", ac7_numerics);
   report("AC8", "format determinism", ac8_format_determinism);

   std::printf("%s: %d of 8 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
   return failures == 0 ? 0 : 1;
}
