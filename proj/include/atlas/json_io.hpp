#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include <atlas/flagprod.hpp>
#include <atlas/types.hpp>

// JSON interchange: matrices as arrays of rows with [re, im] entries, flags
// as lists of frame matrices. The CLI uses these for --input/--output.

namespace atlas {

using nlohmann::json;

inline json to_json(const cmat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

inline cmat matrix_from_json(const json& rows) {
  if (!rows.is_array() || rows.empty())
    throw contract_error("json matrix: expected a nonempty array of rows");
  const int r = static_cast<int>(rows.size());
  const int c = static_cast<int>(rows[0].size());
  cmat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != c)
      throw contract_error("json matrix: ragged rows");
    for (int j = 0; j < c; ++j) {
      const json& e = rows[i][j];
      if (!e.is_array() || e.size() != 2)
        throw contract_error("json matrix: entries must be [re, im]");
      m(i, j) = cplx(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

inline cvec vector_from_json(const json& rows) {
  const cmat m = matrix_from_json(rows);
  if (m.cols() != 1)
    throw contract_error("json vector: expected a single column");
  return m.col(0);
}

inline json to_json(const NestedFlag& f) {
  json frames = json::array();
  for (const cmat& s : f.subspaces) frames.push_back(to_json(s));
  return frames;
}

inline NestedFlag flag_from_json(const json& frames) {
  if (!frames.is_array())
    throw contract_error("json flag: expected an array of frame matrices");
  NestedFlag f;
  for (const json& s : frames) f.subspaces.push_back(matrix_from_json(s));
  return f;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw contract_error("cannot open input file: " + path);
  json j;
  in >> j;
  return j;
}

inline void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw contract_error("cannot open output file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace atlas
