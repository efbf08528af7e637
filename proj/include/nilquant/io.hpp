#pragma once

// Flat-file serialization: operator matrices (CSV or little-endian complex128
// with a JSON sidecar), gridded fields as CSV and verification reports as JSON.

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <string>

#include "nilquant/field.hpp"
#include "nilquant/operator.hpp"
#include "nilquant/report.hpp"

namespace nilquant {

using Json = nlohmann::ordered_json;

inline constexpr const char* kPaperCheckVersion = "1";
inline constexpr const char* kMatrixFormat = "complex128-le";

// Thrown for any failed read or write; the message names the path.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json grid_to_json(const Grid& g);
Grid grid_from_json(const Json& j);

// One row per line, "re,im" pairs separated by commas, row-major.
void write_matrix_csv(const std::filesystem::path& path, const CMatrix& K);
CMatrix read_matrix_csv(const std::filesystem::path& path);

// Kernel samples K(x_i, y_j), row-major, as interleaved little-endian doubles.
// The sidecar path + ".json" holds format, shape, weight, grid and scheme.
void write_operator_binary(const std::filesystem::path& path, const OperatorMatrix& op, const std::string& scheme,
                           const Json& extra = Json::object());
Json read_sidecar(const std::filesystem::path& path);
OperatorMatrix read_operator_binary(const std::filesystem::path& path);

// Header "x1,..,xn,re,im" (Xi fields: z1..zn,zeta1..zetan), one node per line.
void write_field_csv(const std::filesystem::path& path, const Field& f, const Grid& g);
void write_field_csv(const std::filesystem::path& path, const Field& f, const XiGrid& xi);

Json report_to_json(const Report& r, std::uint64_t seed, double tol_scale);
void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace nilquant
