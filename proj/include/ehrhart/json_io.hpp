#pragma once

// JSON input/output: parse simplex and subspace descriptions with exact
// rationals given as "p/q" strings, and serialize reports with a fixed key
// order so output is byte-stable.

#include "ehrhart/driver.hpp"
#include "ehrhart/oracle.hpp"

#include "json.hpp"

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ehrhart {

using Json = nlohmann::ordered_json;

// input-shape problems (bad JSON, missing keys, bad rational strings);
// distinct from mathematical validation failures like degenerate simplices
struct MalformedInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(Int(j.get<long long>()));
  if (j.is_string()) {
    try {
      return rat_from_string(j.get<std::string>());
    } catch (const std::exception& e) {
      throw MalformedInput(std::string("bad rational: ") + e.what());
    }
  }
  throw MalformedInput("coordinates must be \"p/q\" strings or integers");
}

inline std::vector<RatVec> point_rows_from_json(const Json& j, const char* key,
                                                std::size_t expect_len) {
  if (!j.contains(key) || !j[key].is_array())
    throw MalformedInput(std::string("missing or non-array \"") + key + "\"");
  std::vector<RatVec> rows;
  for (const Json& row : j[key]) {
    if (!row.is_array()) throw MalformedInput(std::string("\"") + key + "\" entries must be arrays");
    RatVec v;
    for (const Json& x : row) v.push_back(rat_from_json(x));
    if (v.size() != expect_len)
      throw MalformedInput(std::string("\"") + key + "\" entry has wrong length");
    rows.push_back(std::move(v));
  }
  return rows;
}

inline std::size_t dim_from_json(const Json& j) {
  if (!j.is_object()) throw MalformedInput("input must be a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long long>() < 1)
    throw MalformedInput("missing or invalid \"dim\"");
  return std::size_t(j["dim"].get<long long>());
}

inline Simplex simplex_from_json(const Json& j) {
  std::size_t d = dim_from_json(j);
  return make_simplex(point_rows_from_json(j, "vertices", d));
}

inline Subspace subspace_from_json(const Json& j) {
  std::size_t d = dim_from_json(j);
  return saturate(point_rows_from_json(j, "vectors", d), d);
}

inline Json simplex_to_json(const Simplex& s) {
  Json j;
  j["dim"] = s.dim;
  Json verts = Json::array();
  for (const RatVec& v : s.verts) {
    Json row = Json::array();
    for (const Rat& x : v) row.push_back(rat_to_string(x));
    verts.push_back(std::move(row));
  }
  j["vertices"] = std::move(verts);
  return j;
}

inline Json coeff_report_to_json(const CoeffReport& r) {
  Json j;
  j["d"] = r.d;
  j["k"] = r.k;
  j["n"] = r.n.str();
  j["t"] = r.period.str();
  Json coeffs = Json::array();
  for (std::size_t i = 0; i < r.coefficients.size(); ++i) {
    Json entry;
    entry["i"] = i;
    entry["value"] = rat_to_string(r.coefficients[i]);
    coeffs.push_back(std::move(entry));
  }
  j["coefficients"] = std::move(coeffs);
  Json nu = Json::array();
  for (const Rat& x : r.nu) nu.push_back(rat_to_string(x));
  j["nu"] = std::move(nu);
  return j;
}

inline Json fit_result_to_json(const FitResult& f) {
  Json j;
  j["d"] = f.d;
  j["t"] = f.period.str();
  Json table = Json::array();
  for (std::size_t r = 0; r < f.coeffs.size(); ++r) {
    Json entry;
    entry["residue"] = r + 1;
    Json cs = Json::array();
    for (const Rat& x : f.coeffs[r]) cs.push_back(rat_to_string(x));
    entry["coefficients"] = std::move(cs);
    table.push_back(std::move(entry));
  }
  j["table"] = std::move(table);
  return j;
}

}  // namespace ehrhart
