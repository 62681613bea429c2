// Copyright 2026 The qpeclass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpeclass/probability_map.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qpeclass {

namespace {

double parse_double(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::size_t parse_count(std::string_view text) {
  const double v = parse_double(text);
  if (v < 0 || v != std::floor(v)) {
    throw std::invalid_argument("not a count: '" + std::string(text) + "'");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

void GridSpec::validate() const {
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("grid axes need at least one point");
  if (!(step1 > 0.0) || !(step2 > 0.0)) throw std::invalid_argument("grid steps must be positive");
  if (!std::isfinite(start1) || !std::isfinite(start2)) {
    throw std::invalid_argument("grid start must be finite");
  }
}

ProbabilityMap::ProbabilityMap(GridSpec grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  grid_.validate();
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("map has " + std::to_string(values_.size()) +
                                " values, grid needs " + std::to_string(grid_.size()));
  }
}

ProbabilityMap::ProbabilityMap(GridSpec grid)
    : ProbabilityMap(grid, std::vector<double>(grid.size(), 0.0)) {}

double ProbabilityMap::min() const { return values_.at(argmin()); }
double ProbabilityMap::max() const { return values_.at(argmax()); }

std::size_t ProbabilityMap::argmax() const {
  if (values_.empty()) throw std::domain_error("empty map");
  return static_cast<std::size_t>(std::max_element(values_.begin(), values_.end()) -
                                  values_.begin());
}

std::size_t ProbabilityMap::argmin() const {
  if (values_.empty()) throw std::domain_error("empty map");
  return static_cast<std::size_t>(std::min_element(values_.begin(), values_.end()) -
                                  values_.begin());
}

void ProbabilityMap::require_probabilities() const {
  for (const double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("map value outside [0,1]");
  }
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("cannot format number");
  return std::string(buf, ptr);
}

std::string grid_header(const GridSpec& g) {
  return "# omega1_start=" + format_double(g.start1) + " omega1_step=" + format_double(g.step1) +
         " n1=" + std::to_string(g.n1) + " omega2_start=" + format_double(g.start2) +
         " omega2_step=" + format_double(g.step2) + " n2=" + std::to_string(g.n2);
}

GridSpec parse_grid_header(const std::string& line) {
  std::istringstream in(line);
  std::string token;
  in >> token;
  if (token != "#") throw std::invalid_argument("map header must start with '#'");
  GridSpec g;
  int seen = 0;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad header field " + token);
    const std::string key = token.substr(0, eq);
    const std::string_view val = std::string_view(token).substr(eq + 1);
    if (key == "omega1_start") g.start1 = parse_double(val);
    else if (key == "omega1_step") g.step1 = parse_double(val);
    else if (key == "n1") g.n1 = parse_count(val);
    else if (key == "omega2_start") g.start2 = parse_double(val);
    else if (key == "omega2_step") g.step2 = parse_double(val);
    else if (key == "n2") g.n2 = parse_count(val);
    else throw std::invalid_argument("unknown header field " + key);
    ++seen;
  }
  if (seen != 6) throw std::invalid_argument("map header needs all six grid fields");
  g.validate();
  return g;
}

void write_map_csv(std::ostream& out, const ProbabilityMap& map) {
  out << grid_header(map.grid()) << '\n';
  for (std::size_t i = 0; i < map.rows(); ++i) {
    for (std::size_t j = 0; j < map.cols(); ++j) {
      if (j) out << ',';
      out << format_double(map.at(i, j));
    }
    out << '\n';
  }
}

ProbabilityMap read_map_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty map file");
  const GridSpec grid = parse_grid_header(line);
  std::vector<double> values;
  values.reserve(grid.size());
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::size_t cols = 0;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      values.push_back(parse_double(rest.substr(0, comma)));
      ++cols;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (cols != grid.n2) {
      throw std::invalid_argument("row " + std::to_string(rows) + " has " + std::to_string(cols) +
                                  " values, expected " + std::to_string(grid.n2));
    }
    ++rows;
  }
  if (rows != grid.n1) {
    throw std::invalid_argument("map has " + std::to_string(rows) + " rows, expected " +
                                std::to_string(grid.n1));
  }
  return ProbabilityMap(grid, std::move(values));
}

nlohmann::json to_json(const ProbabilityMap& map) {
  const auto& g = map.grid();
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < map.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < map.cols(); ++j) row.push_back(map.at(i, j));
    rows.push_back(std::move(row));
  }
  return {{"omega1_start", g.start1}, {"omega1_step", g.step1}, {"n1", g.n1},
          {"omega2_start", g.start2}, {"omega2_step", g.step2}, {"n2", g.n2},
          {"values", std::move(rows)}};
}

ProbabilityMap map_from_json(const nlohmann::json& j) {
  GridSpec g;
  g.start1 = j.at("omega1_start").get<double>();
  g.step1 = j.at("omega1_step").get<double>();
  g.n1 = j.at("n1").get<std::size_t>();
  g.start2 = j.at("omega2_start").get<double>();
  g.step2 = j.at("omega2_step").get<double>();
  g.n2 = j.at("n2").get<std::size_t>();
  g.validate();
  const auto& rows = j.at("values");
  if (rows.size() != g.n1) throw std::invalid_argument("JSON map row count mismatch");
  std::vector<double> values;
  values.reserve(g.size());
  for (const auto& row : rows) {
    if (row.size() != g.n2) throw std::invalid_argument("JSON map column count mismatch");
    for (const auto& v : row) values.push_back(v.get<double>());
  }
  return ProbabilityMap(g, std::move(values));
}

void save_map(const std::filesystem::path& path, const ProbabilityMap& map) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  if (path.extension() == ".json") {
    out << to_json(map).dump(1) << '\n';
  } else {
    write_map_csv(out, map);
  }
  if (!out) throw std::runtime_error("error writing " + path.string());
}

ProbabilityMap load_map(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  in >> std::ws;
  if (in.peek() == '{') return map_from_json(nlohmann::json::parse(in));
  return read_map_csv(in);
}

void write_pgm(std::ostream& out, const ProbabilityMap& map) {
  out << "P2\n" << map.cols() << ' ' << map.rows() << "\n255\n";
  for (std::size_t i = 0; i < map.rows(); ++i) {
    for (std::size_t j = 0; j < map.cols(); ++j) {
      const double v = std::clamp(map.at(i, j), 0.0, 1.0);
      if (j) out << ' ';
      out << static_cast<int>(std::lround(v * 255.0));
    }
    out << '\n';
  }
}

}  // namespace qpeclass
