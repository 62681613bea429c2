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
 * @file training.hpp
 * @brief Grid-search training of the classifier rotation parameters.
 *
 * A grid point is accepted when every training state of one class reads
 * ancilla 0 with probability within `tol` of 1 (or 0) and every state of the
 * other class reads it within `tol` of the opposite extreme.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpeclass/classifier.hpp"
#include "qpeclass/noise.hpp"
#include "qpeclass/probability_map.hpp"

namespace qpeclass {

/// Where P₀ values come from.
struct Source {
  enum class Kind { Analytic, Simulator, Noisy };

  Kind kind = Kind::Analytic;
  /// 0 means exact probabilities (analytic and simulator kinds only).
  std::uint64_t shots = 0;
  /// Layout and seed for sampled sources; error rates for Noisy.
  NoiseConfig noise = NoiseConfig::zero();
  unsigned threads = 0;

  static Source analytic() { return {}; }
  static Source simulator(std::uint64_t shots = 0, Layout layout = Layout::Toy,
                          std::uint64_t seed = kDefaultSeed);
  static Source noisy(const NoiseConfig& cfg, std::uint64_t shots);
};

std::string_view to_string(Source::Kind kind);
Source::Kind parse_source_kind(std::string_view text);

/// analytic_p0 at every grid point.
ProbabilityMap ideal_map(const TwoQubitState& state, const GridSpec& grid);

/// Exact ancilla-0 probabilities from the state-vector simulator.
ProbabilityMap simulated_map(const TwoQubitState& state, const GridSpec& grid,
                             Layout layout = Layout::Toy);

/// P₀ map from any source; sampled sources use noisy_map's per-point seeding.
ProbabilityMap map_from_source(const TwoQubitState& state, const GridSpec& grid,
                               const Source& source);

struct TrainingExample {
  std::string name;
  TwoQubitState state;
  BellClass label;
};

/// The four Bell states with their classes.
std::vector<TrainingExample> bell_training_set();

struct OptimalPoint {
  std::size_t i = 0;
  std::size_t j = 0;
  OmegaPoint omega;
  /// Class read out as ancilla 0 at this point.
  BellClass outcome0_class = BellClass::Phi;
  /// Largest distance of any training value from its target extreme.
  double score = 0.0;
};

struct TrainingResult {
  std::vector<OptimalPoint> points;
  double tol = 0.0;
  std::string note;
};

/// 2/√shots: about two binomial standard deviations at the extremes.
double default_sampling_tol(std::uint64_t shots);

TrainingResult train_grid(const std::vector<TrainingExample>& train_set, const GridSpec& grid,
                          const Source& source, double tol);

nlohmann::json to_json(const TrainingResult& result);

enum class ClassLabel { Phi, Psi, Ambiguous };
std::string_view to_string(ClassLabel label);

struct Classification {
  double p0 = 0.0;
  ClassLabel label = ClassLabel::Ambiguous;
  double std_error = 0.0;
  BellClass outcome0_class = BellClass::Phi;
};

/// Estimates P₀ at `omega`. Ancilla 0 denotes `outcome0_class` when given;
/// otherwise the Ψ class at deterministic points where U_Φ = -1 and the
/// Φ class everywhere else. P₀ == 1/2 is reported as ambiguous.
Classification classify(const TwoQubitState& input, const OmegaPoint& omega,
                        const Source& source,
                        std::optional<BellClass> outcome0_class = std::nullopt);

nlohmann::json to_json(const Classification& c);

}  // namespace qpeclass
