#include "tgm/matrix_io.hpp"

#include <fstream>

namespace tgm {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  bool real = true;
  for (const auto& z : m.entries()) real = real && z.imag() == 0.0;
  json entries = json::array();
  for (const auto& z : m.entries()) {
    if (real) {
      entries.push_back(z.real());
    } else {
      entries.push_back(json::array({z.real(), z.imag()}));
    }
  }
  return json{{"dim", m.dim()}, {"field", real ? "real" : "complex"}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw ShapeError("matrix JSON must be an object");
  if (!j.contains("dim") || !j["dim"].is_number_unsigned()) throw ShapeError("matrix JSON needs a positive integer 'dim'");
  if (!j.contains("entries") || !j["entries"].is_array()) throw ShapeError("matrix JSON needs an 'entries' array");
  const auto n = j["dim"].get<std::size_t>();
  const std::string field = j.value("field", std::string("real"));
  if (field != "real" && field != "complex") throw ShapeError("unknown field '" + field + "'");

  const auto& raw = j["entries"];
  if (raw.size() != n * n) {
    throw ShapeError("non-square data: dim " + std::to_string(n) + " needs " + std::to_string(n * n) +
                     " entries, got " + std::to_string(raw.size()));
  }
  std::vector<Complex> entries;
  entries.reserve(raw.size());
  for (const auto& e : raw) {
    if (field == "real") {
      if (!e.is_number()) throw ShapeError("real matrix entries must be numbers");
      entries.emplace_back(e.get<double>(), 0.0);
    } else {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw ShapeError("complex matrix entries must be [re, im] pairs");
      }
      entries.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
  }
  return Matrix(n, std::move(entries));
}

Matrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open matrix file " + path.string());
  try {
    return matrix_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void write_matrix_file(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write matrix file " + path.string());
  out << matrix_to_json(m).dump() << '\n';
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace tgm
