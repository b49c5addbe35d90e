#include "skelcal/io.hpp"

#include "skelcal/error.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>
#include <vector>

namespace skelcal::io
{
namespace
{
   constexpr std::string_view k_capture_header = "frame,joint,x,y,z";

   void append_fixed(std::string& out, double v)
   {
      char buf[64];
      const auto r = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 9);
      out.append(buf, r.ptr);
   }

   std::string line_err(std::size_t line, const std::string& what)
   {
      return "line " + std::to_string(line) + ": " + what;
   }

   template<typename T> bool parse_number(std::string_view s, T& out)
   {
      const auto* end = s.data() + s.size();
      const auto r    = std::from_chars(s.data(), end, out);
      return r.ec == std::errc() && r.ptr == end;
   }

   std::vector<std::string_view> split(std::string_view line, char sep)
   {
      std::vector<std::string_view> out;
      std::size_t start = 0;
      while(true) {
         const auto pos = line.find(sep, start);
         if(pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
         }
         out.push_back(line.substr(start, pos - start));
         start = pos + 1;
      }
   }

   std::string missing_joint(std::size_t frame, std::size_t joint)
   {
      return "frame " + std::to_string(frame) + " has no joint " + std::to_string(joint);
   }

} // namespace

// ---------------------------------------------------------------- captures

std::string format_capture(const CaptureSequence& seq)
{
   std::string out;
   out.reserve(seq.frames.size() * k_joint_count * 48 + 32);
   out.append(k_capture_header);
   out.push_back('\n');
   for(const auto& f : seq.frames)
      for(std::size_t j = 0; j < k_joint_count; ++j) {
         const auto& p = f.joints[j];
         out.append(std::to_string(f.frame_index));
         out.push_back(',');
         out.append(std::to_string(j));
         out.push_back(',');
         append_fixed(out, p.x);
         out.push_back(',');
         append_fixed(out, p.y);
         out.push_back(',');
         append_fixed(out, p.z);
         out.push_back('\n');
      }
   return out;
}

CaptureSequence parse_capture(std::string_view text, GaitDirection direction, std::string label)
{
   CaptureSequence seq;
   seq.direction = direction;
   seq.label     = std::move(label);

   std::size_t line_no     = 0;
   bool header_seen        = false;
   bool in_frame           = false;
   std::size_t next_joint  = 0;
   SkeletonFrame current;

   auto finish_frame = [&] {
      if(!in_frame) return;
      if(next_joint != k_joint_count)
         throw Error(ErrorCode::MissingJoint, missing_joint(current.frame_index, next_joint));
      seq.frames.push_back(current);
      in_frame = false;
   };

   std::size_t pos = 0;
   while(pos <= text.size()) {
      auto eol = text.find('\n', pos);
      if(eol == std::string_view::npos) eol = text.size();
      auto line = text.substr(pos, eol - pos);
      pos       = eol + 1;
      ++line_no;
      if(!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if(line.empty()) {
         if(pos > text.size()) break;
         continue;
      }

      if(!header_seen) {
         if(line != k_capture_header)
            throw Error(ErrorCode::ParseError,
                        line_err(line_no, "expected header '" + std::string(k_capture_header) + "'"));
         header_seen = true;
         continue;
      }

      const auto fields = split(line, ',');
      if(fields.size() != 5)
         throw Error(ErrorCode::ParseError,
                     line_err(line_no, "expected 5 fields, got " + std::to_string(fields.size())));

      std::size_t frame = 0;
      long long joint   = 0;
      Point3 p;
      if(!parse_number(fields[0], frame))
         throw Error(ErrorCode::ParseError, line_err(line_no, "bad frame '" + std::string(fields[0]) + "'"));
      if(!parse_number(fields[1], joint) || !joint_from_index(joint))
         throw Error(ErrorCode::ParseError, line_err(line_no, "bad joint '" + std::string(fields[1]) + "'"));
      if(!parse_number(fields[2], p.x) || !parse_number(fields[3], p.y)
         || !parse_number(fields[4], p.z))
         throw Error(ErrorCode::ParseError, line_err(line_no, "bad coordinate"));

      if(!in_frame || frame != current.frame_index) {
         if(in_frame && frame < current.frame_index)
            throw Error(ErrorCode::ParseError,
                        line_err(line_no, "frame " + std::to_string(frame) + " after frame "
                                              + std::to_string(current.frame_index)));
         finish_frame();
         current             = SkeletonFrame{};
         current.frame_index = frame;
         in_frame            = true;
         next_joint          = 0;
      }

      const auto j = static_cast<std::size_t>(joint);
      if(j > next_joint) throw Error(ErrorCode::MissingJoint, missing_joint(frame, next_joint));
      if(j < next_joint)
         throw Error(ErrorCode::ParseError,
                     line_err(line_no, "joint " + std::to_string(j) + " repeated or out of order"));
      current.joints[j] = p;
      ++next_joint;
   }
   if(!header_seen) throw Error(ErrorCode::ParseError, line_err(1, "missing header"));
   finish_frame();

   return validate_sequence(std::move(seq));
}

CaptureSequence read_capture(const std::filesystem::path& path, GaitDirection direction)
{
   return parse_capture(read_text_file(path), direction, path.stem().string());
}

void write_capture(const CaptureSequence& seq, const std::filesystem::path& path)
{
   write_text_file_atomic(path, format_capture(seq));
}

// ---------------------------------------------------------------- profiles

std::string format_profile(const CalibrationProfile& profile)
{
   nlohmann::ordered_json doc;
   doc["schema_version"] = k_profile_schema_version;
   doc["alpha_g_rad"]    = profile.tilt.alpha_g;
   doc["h_k_m"]          = profile.tilt.h_k;
   doc["beta_degree"]    = profile.beta.fit_degree;
   doc["beta_coeffs"]    = profile.beta.poly.coefficients();
   doc["gait_count"]     = profile.gait_count;
   auto points           = nlohmann::ordered_json::array();
   for(const auto& p : profile.beta.source_points) {
      nlohmann::ordered_json jp;
      jp["joint"]      = index(p.joint);
      jp["height_y_m"] = p.height_y;
      jp["beta_rad"]   = p.beta;
      points.push_back(std::move(jp));
   }
   doc["beta_points"]   = std::move(points);
   doc["created_label"] = profile.created_label;
   return doc.dump(2) + "\n";
}

namespace
{
   using json = nlohmann::json;

   [[noreturn]] void schema_error(const std::string& what) { throw Error(ErrorCode::SchemaError, what); }

   void require_exact_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& where)
   {
      if(!obj.is_object()) schema_error(where + " must be an object");
      std::set<std::string> expected(keys.begin(), keys.end());
      for(const auto& [k, v] : obj.items())
         if(!expected.count(k)) schema_error("unknown field '" + where + k + "'");
      for(const auto* k : keys)
         if(!obj.contains(k)) schema_error("missing field '" + where + k + "'");
   }

   double get_real(const json& obj, const char* key, const std::string& where)
   {
      const auto& v = obj.at(key);
      if(!v.is_number()) schema_error("field '" + where + key + "' must be a number");
      return v.get<double>();
   }

   long long get_int(const json& obj, const char* key, const std::string& where)
   {
      const auto& v = obj.at(key);
      if(!v.is_number_integer()) schema_error("field '" + where + key + "' must be an integer");
      return v.get<long long>();
   }
} // namespace

CalibrationProfile parse_profile(std::string_view text)
{
   json doc;
   try {
      doc = json::parse(text);
   } catch(const json::exception& e) {
      schema_error(std::string("not valid JSON: ") + e.what());
   }

   require_exact_keys(doc,
                      {"schema_version", "alpha_g_rad", "h_k_m", "beta_degree", "beta_coeffs",
                       "gait_count", "beta_points", "created_label"},
                      "");

   if(get_int(doc, "schema_version", "") != k_profile_schema_version)
      schema_error("field 'schema_version': unsupported version " + doc.at("schema_version").dump());

   CalibrationProfile profile;
   profile.tilt.alpha_g = get_real(doc, "alpha_g_rad", "");
   profile.tilt.h_k     = get_real(doc, "h_k_m", "");

   const auto degree = get_int(doc, "beta_degree", "");
   const auto& coeffs = doc.at("beta_coeffs");
   if(!coeffs.is_array()) schema_error("field 'beta_coeffs' must be an array");
   if(degree < 0 || coeffs.size() != std::size_t(degree) + 1)
      schema_error("field 'beta_coeffs': length " + std::to_string(coeffs.size())
                   + " != beta_degree + 1 (" + std::to_string(degree + 1) + ")");
   std::vector<double> cs;
   for(const auto& c : coeffs) {
      if(!c.is_number()) schema_error("field 'beta_coeffs' must hold numbers");
      cs.push_back(c.get<double>());
   }

   const auto gait_count = get_int(doc, "gait_count", "");
   if(gait_count < 1) schema_error("field 'gait_count' must be >= 1");
   profile.gait_count = int(gait_count);

   const auto& points = doc.at("beta_points");
   if(!points.is_array()) schema_error("field 'beta_points' must be an array");
   std::vector<perspective::BetaPoint> bps;
   for(std::size_t i = 0; i < points.size(); ++i) {
      const auto where = "beta_points[" + std::to_string(i) + "].";
      require_exact_keys(points[i], {"joint", "height_y_m", "beta_rad"}, where);
      const auto joint = joint_from_index(get_int(points[i], "joint", where));
      if(!joint) schema_error("field '" + where + "joint' out of range");
      bps.push_back({*joint, get_real(points[i], "height_y_m", where),
                     get_real(points[i], "beta_rad", where)});
   }

   const auto& label = doc.at("created_label");
   if(!label.is_string()) schema_error("field 'created_label' must be a string");
   profile.created_label = label.get<std::string>();

   try {
      profile.beta = perspective::BetaModel{Polynomial(std::move(cs)), int(degree), std::move(bps)};
      validate(profile);
   } catch(const Error& e) {
      schema_error(e.what());
   }
   return profile;
}

CalibrationProfile read_profile(const std::filesystem::path& path)
{
   return parse_profile(read_text_file(path));
}

void write_profile(const CalibrationProfile& profile, const std::filesystem::path& path)
{
   write_text_file_atomic(path, format_profile(profile));
}

// ----------------------------------------------------------------- reports

std::string format_ydiff_report(const CaptureSequence& seq,
                                std::span<const diagnostics::DiffSeries> series)
{
   std::string out = "frame";
   for(const auto& s : series) {
      out.push_back(',');
      out.append(joint_name(s.joint));
   }
   out.push_back('\n');
   for(std::size_t k = 0; k < seq.frames.size(); ++k) {
      out.append(std::to_string(seq.frames[k].frame_index));
      for(const auto& s : series) {
         out.push_back(',');
         append_fixed(out, s.per_frame_diff.at(k));
      }
      out.push_back('\n');
   }
   return out;
}

std::string format_bones_report(const diagnostics::StabilityReport& report)
{
   std::string out = "edge,parent,child,mean_length_m,std_length_m,max_abs_dev_m\n";
   for(const auto& e : report.edges) {
      out.append(std::to_string(e.edge_id));
      out.push_back(',');
      out.append(joint_name(e.edge.parent));
      out.push_back(',');
      out.append(joint_name(e.edge.child));
      for(const double v : {e.mean_length_m, e.std_length_m, e.max_abs_dev_m}) {
         out.push_back(',');
         append_fixed(out, v);
      }
      out.push_back('\n');
   }
   return out;
}

// ------------------------------------------------------------------- files

std::string read_text_file(const std::filesystem::path& path)
{
   std::ifstream in(path, std::ios::binary);
   if(!in) throw Error(ErrorCode::IoFailure, "cannot open '" + path.string() + "' for reading");
   std::ostringstream ss;
   ss << in.rdbuf();
   if(in.bad()) throw Error(ErrorCode::IoFailure, "failed reading '" + path.string() + "'");
   return std::move(ss).str();
}

void write_text_file_atomic(const std::filesystem::path& path, std::string_view content)
{
   auto tmp = path;
   tmp += ".tmp";
   {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if(!out) throw Error(ErrorCode::IoFailure, "cannot open '" + tmp.string() + "' for writing");
      out.write(content.data(), std::streamsize(content.size()));
      out.flush();
      if(!out) throw Error(ErrorCode::IoFailure, "failed writing '" + tmp.string() + "'");
   }
   std::error_code ec;
   std::filesystem::rename(tmp, path, ec);
   if(ec) {
      std::filesystem::remove(tmp, ec);
      throw Error(ErrorCode::IoFailure, "cannot rename onto '" + path.string() + "'");
   }
}

} // namespace skelcal::io
