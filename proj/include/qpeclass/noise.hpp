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
 * @file noise.hpp
 * @brief Monte-Carlo trajectories with stochastic Pauli gate errors and
 * classical readout flips.
 *
 * After every gate, with probability p1 (one-qubit gates) or p2 (gates on two
 * or more qubits), a uniformly random non-identity Pauli string is applied to
 * the gate's qubits. Each measured bit is then flipped with probability
 * p_readout. Relaxation (T1/T2) is not modeled.
 *
 * Three independent random streams are used per run: measurement sampling
 * (seeded exactly like `sample_counts`, so a noiseless configuration
 * reproduces its counts), gate-error injection and readout flips.
 */

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpeclass/probability_map.hpp"
#include "qpeclass/random.hpp"
#include "qpeclass/simulator.hpp"

namespace qpeclass {

enum class Layout { Toy, Hardware };

std::string_view to_string(Layout layout);
Layout parse_layout(std::string_view text);

/// Defaults are effective per-gate rates for a noisy intermediate-depth run:
/// they fold relaxation and miscalibration into the Pauli channel so that a
/// hardware-layout map shows the contrast loss and ~1/2 parity-violation rate
/// seen on real devices. `nominal()` gives the bare per-operation magnitudes.
struct NoiseConfig {
  double p1 = 0.02;
  double p2 = 0.35;
  double p_readout = 0.05;
  Layout layout = Layout::Hardware;
  std::uint64_t seed = kDefaultSeed;

  /// Throws std::invalid_argument unless every probability is in [0, 1].
  void validate() const;

  bool noiseless() const { return p1 == 0.0 && p2 == 0.0 && p_readout == 0.0; }

  /// All error probabilities zero.
  static NoiseConfig zero(Layout layout = Layout::Hardware,
                          std::uint64_t seed = kDefaultSeed);
  /// Textbook per-operation magnitudes: p1 = 1e-3, p2 = 1e-2, p_readout = 1e-2.
  static NoiseConfig nominal(Layout layout = Layout::Hardware,
                             std::uint64_t seed = kDefaultSeed);

  friend bool operator==(const NoiseConfig&, const NoiseConfig&) = default;
};

// Reference gate timings of the modeled device (ns); documentation only.
inline constexpr double kSingleQubitGateNs = 80.0;
inline constexpr double kTwoQubitGateNs = 300.0;
inline constexpr double kGateBufferNs = 10.0;

nlohmann::json to_json(const NoiseConfig& cfg);
/// Keys p1, p2, p_readout, layout ("toy" | "hardware"), seed; missing keys
/// keep their defaults.
NoiseConfig noise_from_json(const nlohmann::json& j);

/// Counts of `shots` noisy executions of `circuit` on `input`.
CountsTable run_noisy(const Circuit& circuit, const StateVector& input,
                      std::uint64_t shots, const NoiseConfig& cfg);

/// Classifier circuit for the configured layout.
Circuit classifier_circuit(Layout layout, const OmegaPoint& omega, bool measure_data);

struct NoisyMapResult {
  /// Raw ancilla-0 frequency per grid point.
  ProbabilityMap map;
  /// Row-major per-point counts; bitstrings are ancilla[, data0, data1].
  std::vector<CountsTable> counts;
};

/// Runs the classifier on `data` ⊗ |0> at every grid point. Point (i, j) is
/// seeded with derive_seed(cfg.seed, i, j), so results do not depend on
/// `threads` (0 = hardware concurrency).
NoisyMapResult noisy_map(const StateVector& data, const GridSpec& grid, std::uint64_t shots,
                         const NoiseConfig& cfg, bool postselect_mode,
                         unsigned threads = 0);

}  // namespace qpeclass
