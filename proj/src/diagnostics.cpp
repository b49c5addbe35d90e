#include "skelcal/diagnostics.hpp"

#include "skelcal/error.hpp"

#include <algorithm>
#include <cmath>

namespace skelcal::diagnostics
{
double DiffSeries::max_abs() const noexcept
{
   double m = 0.0;
   for(const auto d : per_frame_diff) m = std::max(m, std::abs(d));
   return m;
}

std::vector<DiffSeries> y_diff_to_last(const CaptureSequence& seq, std::span<const Joint> joints)
{
   if(seq.frames.empty()) throw Error(ErrorCode::EmptySequence, "no frames to diff");

   std::vector<DiffSeries> out;
   out.reserve(joints.size());
   for(const auto j : joints) {
      const double y_last = seq.frames.back()[j].y;
      DiffSeries s{j, {}};
      s.per_frame_diff.reserve(seq.frames.size());
      for(const auto& f : seq.frames) s.per_frame_diff.push_back(f[j].y - y_last);
      out.push_back(std::move(s));
   }
   return out;
}

double max_abs_diff(std::span<const DiffSeries> series) noexcept
{
   double m = 0.0;
   for(const auto& s : series) m = std::max(m, s.max_abs());
   return m;
}

std::array<BoneLength, k_edge_count> bone_lengths(const SkeletonFrame& frame) noexcept
{
   std::array<BoneLength, k_edge_count> out{};
   const auto& edges = skeleton_edges();
   for(std::size_t i = 0; i < k_edge_count; ++i)
      out[i] = {edges[i], distance(frame[edges[i].parent], frame[edges[i].child])};
   return out;
}

StabilityReport bone_length_stability(const CaptureSequence& seq)
{
   if(seq.frames.size() < 2)
      throw Error(ErrorCode::InsufficientFrames, "bone-length stability needs >= 2 frames");

   const auto n = double(seq.frames.size());
   std::array<std::vector<double>, k_edge_count> lengths;
   for(const auto& f : seq.frames) {
      const auto bl = bone_lengths(f);
      for(std::size_t i = 0; i < k_edge_count; ++i) lengths[i].push_back(bl[i].length_m);
   }

   StabilityReport report;
   report.edges.reserve(k_edge_count);
   for(std::size_t i = 0; i < k_edge_count; ++i) {
      const auto& ls = lengths[i];
      double mean    = 0.0;
      for(const auto l : ls) mean += l;
      mean /= n;

      double var = 0.0, dev = 0.0;
      for(const auto l : ls) {
         var += (l - mean) * (l - mean);
         dev = std::max(dev, std::abs(l - mean));
      }
      EdgeStability e;
      e.edge_id       = i;
      e.edge          = skeleton_edges()[i];
      e.mean_length_m = mean;
      e.std_length_m  = std::sqrt(var / n);
      e.max_abs_dev_m = dev;
      report.max_std_m = std::max(report.max_std_m, e.std_length_m);
      report.edges.push_back(e);
   }
   return report;
}

} // namespace skelcal::diagnostics
