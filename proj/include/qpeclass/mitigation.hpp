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

/**
 * @file mitigation.hpp
 * @brief Classical post-processing of noisy classifier maps.
 *
 * The pipeline runs six fixed steps:
 *   0. parity postselection of the raw counts,
 *   1. min-max normalization,
 *   2. sigmoid contrast transform (steepness fitted on the step-1 map),
 *   3. mean filtering,
 *   4. min-max normalization,
 *   5. sigmoid transform with the step-2 parameters.
 *
 * The classifier circuit is diagonal on the data register, so an ideal run
 * never moves population out of the input's parity subspace; shots whose
 * data bits land outside it are discarded in step 0.
 */

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpeclass/classifier.hpp"
#include "qpeclass/metrics.hpp"
#include "qpeclass/probability_map.hpp"
#include "qpeclass/simulator.hpp"

namespace qpeclass {

/// Thrown by `normalize` for a constant map.
class ConstantMapError : public std::domain_error {
 public:
  ConstantMapError() : std::domain_error("constant map cannot be normalized") {}
};

/// Sigmoid output targeted at the windowed mean around the map maximum.
inline constexpr double kSigmoidTarget = 0.9;
inline constexpr double kSigmoidMidpoint = 0.5;
inline constexpr int kDefaultWindow = 5;

struct PostselectResult {
  CountsTable kept;
  double discard_fraction = 0.0;
  /// Ancilla-0 frequency over the kept shots; empty when nothing was kept.
  std::optional<double> p0;
};

/// Keeps shots whose data bits (characters 1 and 2 of each bitstring, after
/// the ancilla bit) lie in the parity subspace of `input_class`:
/// Phi → {00, 11}, Psi → {01, 10}.
PostselectResult postselect(const CountsTable& counts, BellClass input_class);

/// (v - min) / (max - min).
ProbabilityMap normalize(const ProbabilityMap& map);

struct SigmoidParams {
  double a = 15.0;
  double b = kSigmoidMidpoint;
};

/// Mean over the window×window block centered on (i, j), clipped at the
/// map edges.
double window_mean(const ProbabilityMap& map, std::size_t i, std::size_t j, int window);

/// Windowed mean around the (first) argmax cell.
double mean_near_max(const ProbabilityMap& map, int window = kDefaultWindow);

/// Steepness sending `f_max` to kSigmoidTarget: a = ln(9) / (f_max - 0.5).
/// Throws std::domain_error when f_max <= 0.5.
double steepness_for(double f_max);

SigmoidParams fit_sigmoid_a(const ProbabilityMap& map, int window = kDefaultWindow);

/// Element-wise 1 / (1 + exp(-a (v - b))).
ProbabilityMap sigmoid(const ProbabilityMap& map, const SigmoidParams& params);

/// Each cell becomes the clipped window×window mean around it.
ProbabilityMap mean_filter(const ProbabilityMap& map, int window = kDefaultWindow);

/// Per-point raw counts over a grid, row-major.
struct CountsGrid {
  GridSpec grid;
  std::vector<CountsTable> cells;
};

/// Rows `omega1_index,omega2_index,bitstring,count` after a grid header line
/// (the ProbabilityMap header) and a column-name line.
void write_counts_csv(std::ostream& out, const CountsGrid& counts);
/// Accepts files with or without the grid header; without it, `grid` must be
/// supplied. Shot totals are recomputed from the rows.
CountsGrid read_counts_csv(std::istream& in, const std::optional<GridSpec>& grid = std::nullopt);

/// Ancilla-0 frequency per cell without postselection.
ProbabilityMap raw_ancilla_map(const CountsGrid& counts);

struct PipelineStep {
  int index = 0;
  std::string name;
  ProbabilityMap map;
  /// NaN for a metric that is undefined on the pair.
  MetricsReport metrics;
};

struct PipelineOptions {
  int window = kDefaultWindow;
  /// Replaces the fitted steepness when set.
  std::optional<double> steepness;
};

struct PipelineReport {
  /// Ancilla-0 map before postselection and its metrics.
  ProbabilityMap raw_map;
  MetricsReport raw_metrics;
  std::array<PipelineStep, 6> steps;
  ProbabilityMap discard_fraction;
  SigmoidParams sigmoid;
  /// Windowed mean near the maximum of the step-1 map.
  double f_max = 0.0;
};

PipelineReport run_pipeline(const CountsGrid& counts, BellClass input_class,
                            const ProbabilityMap& reference,
                            const PipelineOptions& options = {});

/// Metrics with NaN in place of undefined values.
MetricsReport compare_lenient(const ProbabilityMap& m, const ProbabilityMap& reference);

/// Metric triples per step plus the discard-fraction grid.
nlohmann::json to_json(const PipelineReport& report);

}  // namespace qpeclass
