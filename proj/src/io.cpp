#include "projpair/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "projpair/errors.hpp"

namespace projpair {

nlohmann::json matrix_to_json(const CMat& m) {
  nlohmann::json data = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      data.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  return nlohmann::json{
      {"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMat matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("data")) {
    throw IoError("matrix json: expected object with rows, cols, data");
  }
  const auto rows = j.at("rows").get<Index>();
  const auto cols = j.at("cols").get<Index>();
  if (rows < 1 || cols < 1) {
    throw IoError("matrix json: rows and cols must be >= 1");
  }
  const auto& data = j.at("data");
  if (!data.is_array() ||
      static_cast<Index>(data.size()) != rows * cols) {
    std::ostringstream msg;
    msg << "matrix json: data has " << data.size() << " entries, expected "
        << rows * cols;
    throw IoError(msg.str());
  }
  CMat m(rows, cols);
  Index k = 0;
  for (Index i = 0; i < rows; ++i) {
    for (Index j2 = 0; j2 < cols; ++j2, ++k) {
      const auto& e = data.at(static_cast<size_t>(k));
      if (!e.is_array() || e.size() != 2 || !e.at(0).is_number() ||
          !e.at(1).is_number()) {
        throw IoError("matrix json: each entry must be a [re, im] pair");
      }
      const double re = e.at(0).get<double>();
      const double im = e.at(1).get<double>();
      if (!std::isfinite(re) || !std::isfinite(im)) {
        throw IoError("matrix json: non-finite entry rejected");
      }
      m(i, j2) = Complex(re, im);
    }
  }
  return m;
}

void write_matrix_json(const std::filesystem::path& path, const CMat& m) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open for writing: " + path.string());
  }
  out << dump_json_17(matrix_to_json(m)) << "\n";
}

CMat read_matrix_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open: " + path.string());
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("malformed json in " + path.string() + ": " + e.what());
  }
  return matrix_from_json(j);
}

std::string format_double_17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void dump_rec(const nlohmann::json& j, std::string& out, int indent,
              int depth) {
  const std::string pad(static_cast<size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<size_t>(indent * depth), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      // std::map keys: already sorted.
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += nlohmann::json(it.key()).dump();
        out += ": ";
        dump_rec(it.value(), out, indent, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        dump_rec(e, out, indent, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      out += format_double_17(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump_json_17(const nlohmann::json& j, int indent) {
  std::string out;
  dump_rec(j, out, indent, 0);
  return out;
}

}  // namespace projpair
