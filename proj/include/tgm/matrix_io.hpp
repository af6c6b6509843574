#pragma once

// Matrix file format:
//   {"dim": n, "field": "real" | "complex", "entries": [...]}
// with n*n row-major numbers (real) or [re, im] pairs (complex).

#include <filesystem>
#include <string>

#include <json.hpp>

#include "tgm/linalg.hpp"

namespace tgm {

/// Writes "real" when every imaginary part is exactly zero.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

Matrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const Matrix& m);

}  // namespace tgm
