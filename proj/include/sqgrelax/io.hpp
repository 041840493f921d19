#pragma once

#include <string>

#include <json.hpp>

#include "sqgrelax/dynamics.hpp"
#include "sqgrelax/field.hpp"

namespace sqg::io {

using json = nlohmann::ordered_json;

// Raw field file: a 32-byte header (magic "SQGF", format version u32,
// n u32, box length f64, 12 reserved bytes), then n*n little-endian f64
// physical samples in row-major order (x1 fastest).  A JSON sidecar at
// <path>.json carries the grid and whatever metadata the caller adds.
void write_field(const std::string& path, const Field& f,
                 const json& metadata = json::object());
Field read_field(const std::string& path);

// One header row, then one data row per record, every value printed with
// %.17g so a round trip is bit-faithful.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

void write_json(const std::string& path, const json& j);
json read_json(const std::string& path);

}  // namespace sqg::io
