#pragma once

#include <iosfwd>
#include <string>

#include "fbgshape/types.hpp"

// Human-readable key-value configuration format.
//
//   # comment
//   schema_version = 1
//   cdm.total_arc_length_mm = 35.0
//   geometry.node.f1.aa1.r_mm = 0.159
//   geometry.node.f1.aa1.theta_deg = 60.848
//   calibration.c_pos = 1.024, 0.945, 0.985
//
// Angles are degrees in the file and radians in memory. Unknown keys are
// rejected; omitted keys fall back to the shipped defaults. The
// schema_version key is mandatory.

namespace fbgshape {

inline constexpr int kConfigSchemaVersion = 1;

/// Parses and validates a configuration file.
/// Throws ParseError on syntax/unknown-key problems, InvariantError when a
/// value violates a type invariant (message names field and bound).
SystemConfig load_config(const std::string& path);

/// Same, from an already-open stream (used by tests and stdin-driven tools).
SystemConfig parse_config(std::istream& in, const std::string& origin = "<stream>");

/// Canonical serialization; parse(serialize(c)) reproduces c exactly.
std::string serialize_config(const SystemConfig& config);

void save_config(const SystemConfig& config, const std::string& path);

/// The shipped default configuration (symmetric-fiber geometry, friction
/// coefficients from the reference calibration, zero twist).
SystemConfig default_config();

} // namespace fbgshape
