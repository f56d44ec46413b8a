#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "projpair/errors.hpp"
#include "projpair/io.hpp"
#include "projpair/rng.hpp"
#include "test_helpers.hpp"

using namespace projpair;
using projpair::testing::dist;

TEST_CASE("matrix json round trip is exact") {
  Rng rng = make_rng(5);
  const CMat m = randn_complex(rng, 3, 4);
  const CMat back = matrix_from_json(matrix_to_json(m));
  CHECK(dist(m, back) == 0.0);

  // Through a file and the 17-digit dump.
  const auto path = std::filesystem::temp_directory_path() / "pp_io_test.json";
  write_matrix_json(path, m);
  CHECK(dist(read_matrix_json(path), m) == 0.0);
  std::filesystem::remove(path);
}

TEST_CASE("matrix json rejects bad shapes and non-finite entries") {
  nlohmann::json j{{"rows", 2}, {"cols", 2}, {"data", {{1.0, 0.0}}}};
  CHECK_THROWS_AS(matrix_from_json(j), IoError);

  nlohmann::json bad{{"rows", 1},
                     {"cols", 1},
                     {"data", {{std::numeric_limits<double>::infinity(), 0.0}}}};
  CHECK_THROWS_AS(matrix_from_json(bad), IoError);

  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::array()), IoError);
  CHECK_THROWS_AS(
      matrix_from_json(nlohmann::json{{"rows", 0}, {"cols", 0},
                                      {"data", nlohmann::json::array()}}),
      IoError);
}

TEST_CASE("dump_json_17 renders doubles at full precision, sorted keys") {
  nlohmann::json j{{"b", 0.1}, {"a", 1.0 / 3.0}};
  const std::string text = dump_json_17(j);
  CHECK(text.find("0.33333333333333331") != std::string::npos);
  CHECK(text.find("0.10000000000000001") != std::string::npos);
  CHECK(text.find("\"a\"") < text.find("\"b\""));
}

TEST_CASE("malformed file raises IoError") {
  const auto path = std::filesystem::temp_directory_path() / "pp_bad.json";
  {
    std::ofstream f(path);
    f << "{not json";
  }
  CHECK_THROWS_AS(read_matrix_json(path), IoError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_matrix_json("/nonexistent/nowhere.json"), IoError);
}
