#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>

#include "projpair/types.hpp"

namespace projpair {

// Matrix file format shared by the CLI and every module:
//   {"rows": n, "cols": n, "data": [[re, im], ...]}  (row-major)
// Readers reject NaN/Inf and shape mismatches.

nlohmann::json matrix_to_json(const CMat& m);
CMat matrix_from_json(const nlohmann::json& j);

void write_matrix_json(const std::filesystem::path& path, const CMat& m);
CMat read_matrix_json(const std::filesystem::path& path);

// Serializes with sorted keys and every double printed with 17 significant
// digits, so reports are diff-stable across runs.
std::string dump_json_17(const nlohmann::json& j, int indent = 2);

// %.17g rendering used for all floating-point text output.
std::string format_double_17(double v);

}  // namespace projpair
