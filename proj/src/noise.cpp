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

#include "qpeclass/noise.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <stdexcept>

#include "qpeclass/classifier.hpp"
#include "qpeclass/parallel.hpp"

namespace qpeclass {

namespace {

constexpr std::uint64_t kGateErrorStream = 1;
constexpr std::uint64_t kReadoutStream = 2;

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
  }
}

// Applies the Pauli string encoded by `code` in base 4 (0=I, 1=X, 2=Y, 3=Z),
// digit k acting on qubits[k].
StateVector apply_pauli_string(StateVector state, const std::vector<unsigned>& qubits,
                               std::uint64_t code) {
  static constexpr char kPaulis[] = {'I', 'X', 'Y', 'Z'};
  for (const unsigned q : qubits) {
    const char p = kPaulis[code & 3U];
    code >>= 2;
    if (p != 'I') state = apply_pauli(state, q, p);
  }
  return state;
}

}  // namespace

std::string_view to_string(Layout layout) {
  return layout == Layout::Toy ? "toy" : "hardware";
}

Layout parse_layout(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "toy") return Layout::Toy;
  if (s == "hardware") return Layout::Hardware;
  throw std::invalid_argument("layout must be 'toy' or 'hardware', got '" + s + "'");
}

void NoiseConfig::validate() const {
  check_probability(p1, "p1");
  check_probability(p2, "p2");
  check_probability(p_readout, "p_readout");
}

NoiseConfig NoiseConfig::zero(Layout layout, std::uint64_t seed) {
  return {0.0, 0.0, 0.0, layout, seed};
}

NoiseConfig NoiseConfig::nominal(Layout layout, std::uint64_t seed) {
  return {1e-3, 1e-2, 1e-2, layout, seed};
}

nlohmann::json to_json(const NoiseConfig& cfg) {
  return {{"p1", cfg.p1},
          {"p2", cfg.p2},
          {"p_readout", cfg.p_readout},
          {"layout", std::string(to_string(cfg.layout))},
          {"seed", cfg.seed}};
}

NoiseConfig noise_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("noise config must be a JSON object");
  NoiseConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "p1") cfg.p1 = value.get<double>();
    else if (key == "p2") cfg.p2 = value.get<double>();
    else if (key == "p_readout") cfg.p_readout = value.get<double>();
    else if (key == "layout") cfg.layout = parse_layout(value.get<std::string>());
    else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
    else throw std::invalid_argument("unknown noise config key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

CountsTable run_noisy(const Circuit& circuit, const StateVector& input, std::uint64_t shots,
                      const NoiseConfig& cfg) {
  if (shots == 0) throw std::invalid_argument("shots must be at least 1");
  cfg.validate();
  circuit.validate();
  if (input.n_qubits() != circuit.n_qubits) {
    throw std::invalid_argument("input width does not match circuit");
  }
  const auto& measured = circuit.measured_qubits;

  // Ideal state after each gate prefix; prefix[k] is the state after k gates.
  std::vector<StateVector> prefix{input};
  prefix.reserve(circuit.gates.size() + 1);
  for (const auto& g : circuit.gates) prefix.push_back(apply_gate(prefix.back(), g));
  const OutcomeSampler ideal_sampler(measure_probabilities(prefix.back(), measured));

  std::vector<double> error_prob;
  error_prob.reserve(circuit.gates.size());
  for (const auto& g : circuit.gates) error_prob.push_back(g.targets.size() == 1 ? cfg.p1 : cfg.p2);

  Rng measure_rng(cfg.seed);
  Rng gate_rng(derive_seed(cfg.seed, kGateErrorStream, 0));
  Rng readout_rng(derive_seed(cfg.seed, kReadoutStream, 0));

  CountsTable table;
  table.shots = shots;
  for (std::uint64_t s = 0; s < shots; ++s) {
    std::optional<StateVector> faulty;
    for (std::size_t k = 0; k < circuit.gates.size(); ++k) {
      const Gate& g = circuit.gates[k];
      if (faulty) faulty = apply_gate(*faulty, g);
      if (error_prob[k] > 0.0 && gate_rng.bernoulli(error_prob[k])) {
        if (!faulty) faulty = prefix[k + 1];
        const std::uint64_t n_strings = std::uint64_t{1} << (2 * g.targets.size());
        const std::uint64_t code = 1 + gate_rng.below(n_strings - 1);
        faulty = apply_pauli_string(std::move(*faulty), g.targets, code);
      }
    }
    std::string bits;
    const double u = measure_rng.uniform();
    if (faulty) {
      // Inverse-CDF over basis states; the last index absorbs rounding.
      std::size_t idx = 0;
      double acc = 0.0;
      for (; idx + 1 < faulty->dim(); ++idx) {
        acc += std::norm((*faulty)[idx]);
        if (u < acc) break;
      }
      bits = bitstring_of(idx, measured);
    } else {
      bits = ideal_sampler.draw(u);
    }
    if (cfg.p_readout > 0.0) {
      for (auto& b : bits) {
        if (readout_rng.bernoulli(cfg.p_readout)) b = (b == '0') ? '1' : '0';
      }
    }
    ++table.counts[bits];
  }
  return table;
}

Circuit classifier_circuit(Layout layout, const OmegaPoint& omega, bool measure_data) {
  return layout == Layout::Toy ? build_toy_circuit(omega, measure_data)
                               : build_hardware_circuit(omega, measure_data);
}

NoisyMapResult noisy_map(const StateVector& data, const GridSpec& grid, std::uint64_t shots,
                         const NoiseConfig& cfg, bool postselect_mode, unsigned threads) {
  grid.validate();
  cfg.validate();
  if (shots == 0) throw std::invalid_argument("shots must be at least 1");
  if (data.n_qubits() != 2) throw std::invalid_argument("classifier input must be two qubits");
  const StateVector input = with_ancillas(data);

  NoisyMapResult result{ProbabilityMap(grid), std::vector<CountsTable>(grid.size())};
  parallel_for(grid.size(), threads, [&](std::size_t idx) {
    const std::size_t i = idx / grid.n2;
    const std::size_t j = idx % grid.n2;
    NoiseConfig point_cfg = cfg;
    point_cfg.seed = derive_seed(cfg.seed, i, j);
    const Circuit c = classifier_circuit(cfg.layout, grid.point(i, j), postselect_mode);
    CountsTable counts = run_noisy(c, input, shots, point_cfg);
    std::uint64_t zeros = 0;
    for (const auto& [bits, n] : counts.counts) {
      if (bits.front() == '0') zeros += n;
    }
    result.map.at(i, j) = static_cast<double>(zeros) / static_cast<double>(shots);
    result.counts[idx] = std::move(counts);
  });
  return result;
}

}  // namespace qpeclass
