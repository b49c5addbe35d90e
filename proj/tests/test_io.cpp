#include "skelcal/io.hpp"
#include "skelcal/synthetic.hpp"

#include "gtest_helpers.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <json.hpp>

namespace skelcal::io
{
namespace
{
using skelcal::testing::code_of;
namespace fs = std::filesystem;

class IoTest : public ::testing::Test
{
 protected:
   void SetUp() override
   {
      dir_ = fs::temp_directory_path()
             / ("skelcal_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
      fs::create_directories(dir_);
   }
   void TearDown() override { fs::remove_all(dir_); }

   fs::path dir_;
};

CaptureSequence noisy_walk(int frames)
{
   return synthetic::add_noise(
       synthetic::generate_truth_capture(synthetic::BodyTemplate::adult(), GaitDirection::Vertical, frames, 4.5, 1.5),
       0.003, 1);
}

CalibrationProfile sample_profile()
{
   CalibrationProfile p;
   p.tilt          = {0.1212713234958627, 0.75};
   p.beta.poly     = Polynomial({0.0012345678901234567, 0.029876543210987654, -1.5e-4});
   p.beta.fit_degree = 2;
   p.beta.source_points = {{Joint::Head, 1.6812345, 0.0491},
                           {Joint::SpineMid, 1.2399, 0.0371},
                           {Joint::KneeLeft, 0.4712, 0.0149},
                           {Joint::AnkleRight, 0.0712, 0.0021}};
   p.gait_count    = 10;
   p.created_label = "lab \"A\", session 3";
   return p;
}

TEST_F(IoTest, CaptureRoundTripWithinTolerance)
{
   const auto seq  = noisy_walk(3);
   const auto path = dir_ / "walk.csv";
   write_capture(seq, path);
   const auto back = read_capture(path, GaitDirection::Vertical);
   EXPECT_EQ(back.label, "walk");
   ASSERT_EQ(back.frames.size(), 3u);
   EXPECT_LE(testing::max_coordinate_error(back, seq), 1e-9);
}

TEST_F(IoTest, CaptureWritesAreByteStable)
{
   const auto seq = noisy_walk(20);
   const auto a = dir_ / "a.csv", b = dir_ / "b.csv";
   write_capture(seq, a);
   write_capture(read_capture(a, GaitDirection::Vertical), b);
   EXPECT_EQ(read_text_file(a), read_text_file(b));
   EXPECT_EQ(read_text_file(a).find('\r'), std::string::npos);
   EXPECT_FALSE(fs::exists(dir_ / "a.csv.tmp"));
}

TEST(CaptureFormat, HeaderAndRowLayout)
{
   CaptureSequence seq;
   seq.frames.push_back(testing::ramp_frame(4));
   const auto text = format_capture(seq);
   EXPECT_EQ(text.rfind("frame,joint,x,y,z\n4,0,0.000000000,0.000000000,2.000000000\n", 0), 0u);
   EXPECT_NE(text.find("\n4,24,24.000000000,2.400000000,2.240000000\n"), std::string::npos);
}

TEST(CaptureFormat, MissingJoint)
{
   auto text = format_capture(testing::ramp_sequence(2));
   // Drop frame 0, joint 7.
   const auto row = text.find("\n0,7,");
   text.erase(row + 1, text.find('\n', row + 1) - row);
   try {
      parse_capture(text, GaitDirection::Vertical);
      FAIL();
   } catch(const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::MissingJoint);
      EXPECT_EQ(e.detail(), "frame 0 has no joint 7");
   }

   // A truncated final frame.
   auto tail = format_capture(testing::ramp_sequence(1));
   tail.erase(tail.rfind("0,24,"));
   EXPECT_EQ(code_of([&] { parse_capture(tail, GaitDirection::Vertical); }), ErrorCode::MissingJoint);
}

TEST(CaptureFormat, HeaderOnlyIsEmptySequence)
{
   EXPECT_EQ(code_of([] { parse_capture("frame,joint,x,y,z\n", GaitDirection::Vertical); }),
             ErrorCode::EmptySequence);
}

TEST(CaptureFormat, ParseErrorsCarryLineNumbers)
{
   const std::string good = format_capture(testing::ramp_sequence(1));
   try {
      parse_capture("frame,joint,x,y,z\n0,0,1.0,abc,2.0\n", GaitDirection::Vertical);
      FAIL();
   } catch(const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError);
      EXPECT_EQ(e.detail().rfind("line 2:", 0), 0u) << e.detail();
   }
   EXPECT_EQ(code_of([] { parse_capture("x,y\n", GaitDirection::Vertical); }), ErrorCode::ParseError);
   EXPECT_EQ(code_of([] { parse_capture("", GaitDirection::Vertical); }), ErrorCode::ParseError);
   EXPECT_EQ(code_of([] { parse_capture("frame,joint,x,y,z\n0,25,1,1,1\n", GaitDirection::Vertical); }),
             ErrorCode::ParseError);
   EXPECT_EQ(code_of([] { parse_capture("frame,joint,x,y,z\n0,0,1,1\n", GaitDirection::Vertical); }),
             ErrorCode::ParseError);

   // Frames out of order.
   CaptureSequence two;
   two.frames = {testing::ramp_frame(5), testing::ramp_frame(6)};
   auto text  = format_capture(two);
   const auto second = text.find("\n6,");
   auto swapped = std::string("frame,joint,x,y,z") + text.substr(second) + text.substr(17, second - 17 + 1);
   swapped.pop_back();
   EXPECT_EQ(code_of([&] { parse_capture(swapped, GaitDirection::Vertical); }), ErrorCode::ParseError);

   // Accepts CRLF input.
   std::string crlf;
   for(const char c : good) {
      if(c == '\n') crlf += '\r';
      crlf += c;
   }
   EXPECT_EQ(parse_capture(crlf, GaitDirection::Vertical).frames.size(), 1u);
}

TEST(CaptureFormat, NonFiniteValueRejected)
{
   auto text = format_capture(testing::ramp_sequence(1));
   text.replace(text.find("\n0,3,") + 5, 11, "nan");
   EXPECT_EQ(code_of([&] { parse_capture(text, GaitDirection::Vertical); }), ErrorCode::NonFiniteCoordinate);
}

TEST_F(IoTest, ProfileRoundTripIsFieldExact)
{
   const auto p    = sample_profile();
   const auto path = dir_ / "profile.json";
   write_profile(p, path);
   EXPECT_EQ(read_profile(path), p);

   const auto text = read_text_file(path);
   write_profile(read_profile(path), path);
   EXPECT_EQ(read_text_file(path), text);
}

TEST(ProfileFormat, FieldOrder)
{
   const auto text = format_profile(sample_profile());
   const char* keys[] = {"schema_version", "alpha_g_rad", "h_k_m", "beta_degree", "beta_coeffs",
                         "gait_count", "beta_points", "created_label"};
   std::size_t last = 0;
   for(const auto* k : keys) {
      const auto at = text.find(std::string("\"") + k + "\"");
      ASSERT_NE(at, std::string::npos) << k;
      EXPECT_GT(at, last) << k;
      last = at;
   }
}

nlohmann::json sample_json() { return nlohmann::json::parse(format_profile(sample_profile())); }

ErrorCode schema_code(const nlohmann::json& doc)
{
   return code_of([&] { parse_profile(doc.dump()); });
}

TEST(ProfileFormat, StrictSchema)
{
   auto doc           = sample_json();
   doc["beta_coeffs"] = {0.1, 0.2};
   EXPECT_EQ(schema_code(doc), ErrorCode::SchemaError);

   doc                   = sample_json();
   doc["schema_version"] = 2;
   EXPECT_EQ(schema_code(doc), ErrorCode::SchemaError);

   doc          = sample_json();
   doc["extra"] = true;
   try {
      parse_profile(doc.dump());
      FAIL();
   } catch(const Error& e) {
      EXPECT_NE(e.detail().find("extra"), std::string::npos);
   }

   doc = sample_json();
   doc.erase("h_k_m");
   EXPECT_EQ(schema_code(doc), ErrorCode::SchemaError);

   doc                            = sample_json();
   doc["beta_points"][0]["joint"] = 30;
   EXPECT_EQ(schema_code(doc), ErrorCode::SchemaError);

   doc                             = sample_json();
   doc["beta_points"][1]["weight"] = 1.0;
   EXPECT_EQ(schema_code(doc), ErrorCode::SchemaError);

   doc                = sample_json();
   doc["beta_degree"] = "2";
   EXPECT_EQ(schema_code(doc), ErrorCode::SchemaError);

   doc                = sample_json();
   doc["alpha_g_rad"] = 2.0; // beyond pi/2
   EXPECT_EQ(schema_code(doc), ErrorCode::SchemaError);

   doc               = sample_json();
   doc["gait_count"] = 0;
   EXPECT_EQ(schema_code(doc), ErrorCode::SchemaError);

   EXPECT_EQ(code_of([] { parse_profile("{not json"); }), ErrorCode::SchemaError);
}

TEST(Reports, YDiffAndBonesTables)
{
   const auto seq = testing::ramp_sequence(3);
   const std::vector<Joint> joints = {Joint::Head, Joint::KneeLeft};
   const auto ydiff = format_ydiff_report(seq, diagnostics::y_diff_to_last(seq, joints));
   EXPECT_EQ(ydiff,
             "frame,Head,KneeLeft\n"
             "0,-0.100000000,-0.100000000\n"
             "1,-0.050000000,-0.050000000\n"
             "2,0.000000000,0.000000000\n");

   const auto bones = format_bones_report(diagnostics::bone_length_stability(seq));
   EXPECT_EQ(bones.rfind("edge,parent,child,mean_length_m,std_length_m,max_abs_dev_m\n0,SpineBase,SpineMid,", 0), 0u);
   EXPECT_EQ(std::count(bones.begin(), bones.end(), '\n'), 25);
}

TEST(Files, MissingFileIsIoFailure)
{
   EXPECT_EQ(code_of([] { read_capture("/nonexistent/dir/x.csv", GaitDirection::Vertical); }),
             ErrorCode::IoFailure);
   EXPECT_EQ(code_of([] { write_text_file_atomic("/nonexistent/dir/x.csv", "x"); }), ErrorCode::IoFailure);
}

} // namespace
} // namespace skelcal::io
