#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "splitrange/splitting.hpp"
#include "splitrange/types.hpp"

namespace splitrange {

/// Write a cloud as CSV, one point per row, header "x0,...,x{d-1}". Witness
/// columns (when present) follow as "w{k}_0,...".
void write_cloud_csv(const std::string& path, const PointCloud& cloud);
void write_cloud_csv(std::ostream& out, const PointCloud& cloud);

/// Read a cloud written by write_cloud_csv (witness columns ignored).
PointCloud read_cloud_csv(const std::string& path);

/// Write an iteration trace as CSV:
/// iter, x_0..x_{d-1}, shadow_0..shadow_{d-1}, displacement_norm.
void write_trace_csv(const std::string& path, const DRTrace& trace);

/// Write a support-profile comparison as CSV:
/// direction components, value_C, value_D, gap — one row per direction.
void write_support_gap_csv(const std::string& path, const Matrix& directions,
                           const Vector& values_c, const Vector& values_d);

/// Serialize a vector as a JSON array.
nlohmann::json vector_to_json(const Vector& v);

/// Write JSON to a file with trailing newline.
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace splitrange
