#pragma once

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vfts/metric.hpp"

namespace vfts {

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

/// CSV points: one point per line, comma-separated coordinates. Blank lines
/// and lines starting with '#' are skipped.
inline std::vector<std::vector<double>> parse_points_csv(std::istream& in) {
  std::vector<std::vector<double>> pts;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      std::size_t pos = 0;
      double v;
      try {
        v = std::stod(cell, &pos);
      } catch (const std::exception&) {
        throw std::runtime_error("bad coordinate '" + cell + "'");
      }
      while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
      if (pos != cell.size()) throw std::runtime_error("bad coordinate '" + cell + "'");
      row.push_back(v);
    }
    if (row.empty()) throw std::runtime_error("empty row in point file");
    pts.push_back(std::move(row));
  }
  return pts;
}

/// JSON point file: {"dim": d, "points": [[..], ..]} for coordinates, or a
/// bare n x n array for an explicit distance matrix.
inline MetricSpace parse_metric_json(const nlohmann::json& j) {
  if (j.is_array()) {
    std::vector<std::vector<double>> rows = j.get<std::vector<std::vector<double>>>();
    return MetricSpace::from_matrix(rows);
  }
  if (!j.is_object() || !j.contains("points"))
    throw std::runtime_error("expected {\"dim\":d,\"points\":[..]} or a matrix array");
  auto pts = j.at("points").get<std::vector<std::vector<double>>>();
  if (j.contains("dim")) {
    int d = j.at("dim").get<int>();
    for (const auto& p : pts)
      if (static_cast<int>(p.size()) != d)
        throw std::runtime_error("point dimension disagrees with \"dim\"");
  }
  return MetricSpace::from_points(std::move(pts));
}

inline MetricSpace read_metric_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    nlohmann::json j;
    in >> j;
    return parse_metric_json(j);
  }
  return MetricSpace::from_points(parse_points_csv(in));
}

inline void write_points_csv(std::ostream& out, const std::vector<std::vector<double>>& pts) {
  for (const auto& p : pts) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) out << ',';
      out << format_double(p[i]);
    }
    out << '\n';
  }
}

inline void write_points_json(std::ostream& out, const std::vector<std::vector<double>>& pts) {
  nlohmann::json j;
  j["dim"] = pts.empty() ? 0 : pts[0].size();
  j["points"] = pts;
  out << j.dump(2) << '\n';
}

}  // namespace vfts
