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

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpeclass/classifier.hpp"

namespace qpeclass {

/// Rectangular (ω₁, ω₂) grid. Row index i runs over ω₁, column j over ω₂.
struct GridSpec {
  double start1 = -2.0;
  double step1 = 0.1;
  std::size_t n1 = 40;
  double start2 = -2.0;
  double step2 = 0.1;
  std::size_t n2 = 40;

  /// Throws std::invalid_argument for empty axes or non-positive steps.
  void validate() const;

  std::size_t size() const { return n1 * n2; }
  double omega1(std::size_t i) const { return start1 + step1 * static_cast<double>(i); }
  double omega2(std::size_t j) const { return start2 + step2 * static_cast<double>(j); }
  OmegaPoint point(std::size_t i, std::size_t j) const { return {omega1(i), omega2(j)}; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Values over a GridSpec, stored row-major (index i * n2 + j).
class ProbabilityMap {
 public:
  ProbabilityMap() = default;
  ProbabilityMap(GridSpec grid, std::vector<double> values);
  explicit ProbabilityMap(GridSpec grid);

  const GridSpec& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t rows() const { return grid_.n1; }
  std::size_t cols() const { return grid_.n2; }
  std::size_t size() const { return values_.size(); }

  double& at(std::size_t i, std::size_t j) { return values_[i * grid_.n2 + j]; }
  double at(std::size_t i, std::size_t j) const { return values_[i * grid_.n2 + j]; }

  double min() const;
  double max() const;
  /// Row-major index of the first maximum / minimum.
  std::size_t argmax() const;
  std::size_t argmin() const;

  /// Throws std::domain_error unless every value lies in [0, 1].
  void require_probabilities() const;

  friend bool operator==(const ProbabilityMap&, const ProbabilityMap&) = default;

 private:
  GridSpec grid_;
  std::vector<double> values_;
};

/// Shortest decimal text that reads back to exactly `v`.
std::string format_double(double v);

/// CSV: one header line
///   # omega1_start=<v> omega1_step=<v> n1=<v> omega2_start=<v> omega2_step=<v> n2=<v>
/// followed by n1 rows of n2 comma-separated values.
void write_map_csv(std::ostream& out, const ProbabilityMap& map);
ProbabilityMap read_map_csv(std::istream& in);

std::string grid_header(const GridSpec& grid);
/// Parses the `# omega1_start=...` header line.
GridSpec parse_grid_header(const std::string& line);

nlohmann::json to_json(const ProbabilityMap& map);
ProbabilityMap map_from_json(const nlohmann::json& j);

/// Writes JSON when the extension is .json, CSV otherwise.
void save_map(const std::filesystem::path& path, const ProbabilityMap& map);
/// Reads either format, detected from the first non-blank character.
ProbabilityMap load_map(const std::filesystem::path& path);

/// Plain-text PGM (P2) heatmap; values are clamped to [0,1] and scaled to
/// 0..255 so that a larger value never gets a darker gray level.
void write_pgm(std::ostream& out, const ProbabilityMap& map);

}  // namespace qpeclass
