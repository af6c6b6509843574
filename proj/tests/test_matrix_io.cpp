#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "tgm/ensembles.hpp"
#include "tgm/matrix_io.hpp"

using namespace tgm;
using nlohmann::json;

TEST_CASE("real matrix parses row-major") {
  const Matrix m = matrix_from_json(json::parse(R"({"dim": 2, "field": "real", "entries": [1, 2, 3, 4]})"));
  CHECK(m(0, 1) == Complex(2.0, 0.0));
  CHECK(m(1, 0) == Complex(3.0, 0.0));
}

TEST_CASE("complex matrix parses [re, im] pairs") {
  const Matrix m =
      matrix_from_json(json::parse(R"({"dim": 2, "field": "complex", "entries": [[1,0],[0,1],[0,-1],[2,0]]})"));
  CHECK(m(0, 1) == Complex(0.0, 1.0));
  CHECK(m(1, 0) == Complex(0.0, -1.0));
}

TEST_CASE("non-square and malformed inputs are rejected") {
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"dim": 2, "field": "real", "entries": [1, 2, 3]})")), ShapeError);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"dim": 2, "field": "real", "entries": [1, 2, 3, 4, 5, 6]})")),
                  ShapeError);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"dim": 1, "field": "quaternion", "entries": [1]})")), Error);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"dim": 1, "field": "complex", "entries": [[1, 2, 3]]})")), Error);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"field": "real", "entries": [1]})")), Error);
}

TEST_CASE("real matrices are written as real") {
  const Matrix m = Matrix::identity(2);
  const json j = matrix_to_json(m);
  CHECK(j.at("field") == "real");
  CHECK(j.at("entries") == json::array({1.0, 0.0, 0.0, 1.0}));
}

TEST_CASE("property: JSON round trip is exact") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Field field = seed % 2 ? Field::Complex : Field::Real;
    const Matrix m = random_matrix(1 + seed % 6, field, seed);
    const json j = matrix_to_json(m);
    CHECK(matrix_from_json(json::parse(j.dump())) == m);
  }
}

TEST_CASE("file round trip") {
  const auto path = std::filesystem::temp_directory_path() / "tgm_test_matrix_io.json";
  const Matrix m = random_matrix(3, Field::Complex, 7);
  write_matrix_file(path, m);
  CHECK(read_matrix_file(path) == m);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_matrix_file(path), Error);
}
