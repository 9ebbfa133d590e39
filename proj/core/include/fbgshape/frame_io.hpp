#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fbgshape/calibrate.hpp"
#include "fbgshape/reconstruct.hpp"
#include "fbgshape/types.hpp"

// File and wire formats.
//
//   frames CSV      header t,l11,l12,l13,l21,l22,l23 (node order fiber-major)
//   dataset CSV     frames columns + sign + per-AA ground truth
//                   (kappa_gt_j in 1/mm, phi_gt_deg_j in degrees)
//   centerline CSV  header s_mm,x_mm,y_mm
//   stream records  one JSON object per line, same field names as the CSV
//
// All floating-point output uses 9 significant digits, so identical inputs
// produce byte-identical files.

namespace fbgshape::io {

/// 9-significant-digit formatting used by every writer.
std::string format_number(double v);

// --- frames CSV ------------------------------------------------------------

std::vector<WavelengthFrame> read_frames_csv(std::istream& in, const std::string& origin);
std::vector<WavelengthFrame> load_frames_csv(const std::string& path);
void write_frames_csv(std::ostream& out, const std::vector<WavelengthFrame>& frames);
void save_frames_csv(const std::string& path, const std::vector<WavelengthFrame>& frames);

// --- calibration dataset CSV ------------------------------------------------

calibrate::CalibrationDataset read_dataset_csv(std::istream& in, const std::string& origin);
calibrate::CalibrationDataset load_dataset_csv(const std::string& path);
void write_dataset_csv(std::ostream& out, const calibrate::CalibrationDataset& dataset);
void save_dataset_csv(const std::string& path, const calibrate::CalibrationDataset& dataset);

// --- centerline CSV ----------------------------------------------------------

void write_centerline_csv(std::ostream& out, const reconstruct::CenterlinePolyline& line);
void save_centerline_csv(const std::string& path, const reconstruct::CenterlinePolyline& line);
reconstruct::CenterlinePolyline read_centerline_csv(std::istream& in, const std::string& origin);
reconstruct::CenterlinePolyline load_centerline_csv(const std::string& path);

// --- JSON-lines stream records -----------------------------------------------

/// Parses one stream input record. Returns nullopt for blank lines; throws
/// ParseError for malformed records.
std::optional<WavelengthFrame> parse_stream_record(const std::string& line);

/// Serializes one stream output record. The polyline is included only in
/// full (non-tip-only) mode.
std::string stream_output_record(std::uint64_t id, const WavelengthFrame& frame,
                                 const reconstruct::ReconstructionResult& result,
                                 bool tip_only);

/// Error record emitted for malformed stream input.
std::string stream_error_record(std::uint64_t id, const std::string& message);

/// Dropped-frame counter record emitted on queue overflow.
std::string stream_drop_record(std::uint64_t dropped_total);

} // namespace fbgshape::io
