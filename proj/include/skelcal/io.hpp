#pragma once

#include "skelcal/diagnostics.hpp"
#include "skelcal/pipeline.hpp"
#include "skelcal/skeleton.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace skelcal::io
{
// ---------------------------------------------------------------- captures
//
// CSV, header `frame,joint,x,y,z`, one row per joint per frame sorted by
// (frame, joint), coordinates in meters with 9 decimals, LF line endings.

std::string format_capture(const CaptureSequence& seq);

// `label` becomes the sequence label. Errors: ParseError (with line number),
// MissingJoint(frame, joint), plus validate_sequence errors.
CaptureSequence parse_capture(std::string_view text, GaitDirection direction, std::string label = {});

// Label is the file stem.
CaptureSequence read_capture(const std::filesystem::path& path, GaitDirection direction);
void write_capture(const CaptureSequence& seq, const std::filesystem::path& path);

// ---------------------------------------------------------------- profiles
//
constexpr int k_profile_schema_version = 1;

std::string format_profile(const CalibrationProfile& profile);
// Strict: unknown or missing fields, wrong types, unsupported schema_version
// and beta_coeffs/beta_degree mismatch are SchemaError.
CalibrationProfile parse_profile(std::string_view text);

CalibrationProfile read_profile(const std::filesystem::path& path);
void write_profile(const CalibrationProfile& profile, const std::filesystem::path& path);

// ----------------------------------------------------------------- reports
//
// Wide table: `frame,<joint>,...`, one row per frame.
std::string format_ydiff_report(const CaptureSequence& seq,
                                std::span<const diagnostics::DiffSeries> series);
// One row per edge.
std::string format_bones_report(const diagnostics::StabilityReport& report);

// ------------------------------------------------------------------- files
//
std::string read_text_file(const std::filesystem::path& path);
// Writes to a sibling temporary file, then renames over `path`.
void write_text_file_atomic(const std::filesystem::path& path, std::string_view content);

} // namespace skelcal::io
