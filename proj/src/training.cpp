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

#include "qpeclass/training.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpeclass {

Source Source::simulator(std::uint64_t shots, Layout layout, std::uint64_t seed) {
  return {Kind::Simulator, shots, NoiseConfig::zero(layout, seed), 0};
}

Source Source::noisy(const NoiseConfig& cfg, std::uint64_t shots) {
  if (shots == 0) throw std::invalid_argument("noisy source needs shots >= 1");
  return {Kind::Noisy, shots, cfg, 0};
}

std::string_view to_string(Source::Kind kind) {
  switch (kind) {
    case Source::Kind::Analytic: return "analytic";
    case Source::Kind::Simulator: return "sim";
    case Source::Kind::Noisy: return "noisy";
  }
  return "?";
}

Source::Kind parse_source_kind(std::string_view text) {
  if (text == "analytic") return Source::Kind::Analytic;
  if (text == "sim" || text == "simulator") return Source::Kind::Simulator;
  if (text == "noisy") return Source::Kind::Noisy;
  throw std::invalid_argument("source must be analytic, sim or noisy, got '" +
                              std::string(text) + "'");
}

ProbabilityMap ideal_map(const TwoQubitState& state, const GridSpec& grid) {
  grid.validate();
  state.validate();
  ProbabilityMap m(grid);
  for (std::size_t i = 0; i < grid.n1; ++i) {
    for (std::size_t j = 0; j < grid.n2; ++j) m.at(i, j) = analytic_p0(state, grid.point(i, j));
  }
  return m;
}

ProbabilityMap simulated_map(const TwoQubitState& state, const GridSpec& grid, Layout layout) {
  grid.validate();
  const StateVector data = state.to_state_vector();
  ProbabilityMap m(grid);
  for (std::size_t i = 0; i < grid.n1; ++i) {
    for (std::size_t j = 0; j < grid.n2; ++j) {
      m.at(i, j) = simulated_p0(data, classifier_circuit(layout, grid.point(i, j), false));
    }
  }
  return m;
}

ProbabilityMap map_from_source(const TwoQubitState& state, const GridSpec& grid,
                               const Source& source) {
  switch (source.kind) {
    case Source::Kind::Analytic:
      return ideal_map(state, grid);
    case Source::Kind::Simulator:
      if (source.shots == 0) return simulated_map(state, grid, source.noise.layout);
      return noisy_map(state.to_state_vector(), grid, source.shots,
                       NoiseConfig::zero(source.noise.layout, source.noise.seed), false,
                       source.threads)
          .map;
    case Source::Kind::Noisy:
      return noisy_map(state.to_state_vector(), grid, source.shots, source.noise, false,
                       source.threads)
          .map;
  }
  throw std::logic_error("unhandled source kind");
}

std::vector<TrainingExample> bell_training_set() {
  std::vector<TrainingExample> set;
  for (const auto label : kAllBellLabels) {
    set.push_back({std::string(to_string(label)), bell_amplitudes(label), class_of(label)});
  }
  return set;
}

double default_sampling_tol(std::uint64_t shots) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  return 2.0 / std::sqrt(static_cast<double>(shots));
}

TrainingResult train_grid(const std::vector<TrainingExample>& train_set, const GridSpec& grid,
                          const Source& source, double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be non-negative");
  const bool has_phi = std::any_of(train_set.begin(), train_set.end(),
                                   [](const auto& e) { return e.label == BellClass::Phi; });
  const bool has_psi = std::any_of(train_set.begin(), train_set.end(),
                                   [](const auto& e) { return e.label == BellClass::Psi; });
  if (!has_phi || !has_psi) throw std::invalid_argument("training set must cover both classes");

  std::vector<ProbabilityMap> maps;
  maps.reserve(train_set.size());
  for (const auto& e : train_set) maps.push_back(map_from_source(e.state, grid, source));

  TrainingResult result;
  result.tol = tol;
  for (std::size_t i = 0; i < grid.n1; ++i) {
    for (std::size_t j = 0; j < grid.n2; ++j) {
      // Try both assignments: Phi reads 0 (target P0 = 1) or Psi reads 0.
      for (const BellClass zero_class : {BellClass::Phi, BellClass::Psi}) {
        double worst = 0.0;
        for (std::size_t k = 0; k < train_set.size(); ++k) {
          const double target = train_set[k].label == zero_class ? 1.0 : 0.0;
          worst = std::max(worst, std::abs(maps[k].at(i, j) - target));
        }
        if (worst <= tol) {
          result.points.push_back({i, j, grid.point(i, j), zero_class, worst});
          break;
        }
      }
    }
  }
  if (result.points.empty()) {
    result.note = "no grid point separates the classes deterministically within tol";
  }
  return result;
}

nlohmann::json to_json(const TrainingResult& result) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : result.points) {
    points.push_back({{"omega1", p.omega.omega1},
                      {"omega2", p.omega.omega2},
                      {"omega1_index", p.i},
                      {"omega2_index", p.j},
                      {"ancilla0_class", std::string(to_string(p.outcome0_class))},
                      {"ancilla1_class", std::string(to_string(opposite(p.outcome0_class)))},
                      {"score", p.score}});
  }
  nlohmann::json j{{"tol", result.tol}, {"optimal_points", std::move(points)}};
  if (!result.note.empty()) j["note"] = result.note;
  return j;
}

std::string_view to_string(ClassLabel label) {
  switch (label) {
    case ClassLabel::Phi: return "Phi";
    case ClassLabel::Psi: return "Psi";
    case ClassLabel::Ambiguous: return "ambiguous";
  }
  return "?";
}

Classification classify(const TwoQubitState& input, const OmegaPoint& omega,
                        const Source& source, std::optional<BellClass> outcome0_class) {
  input.validate();
  Classification c;
  bool exact = true;
  const Circuit circuit = classifier_circuit(source.noise.layout, omega, false);
  switch (source.kind) {
    case Source::Kind::Analytic:
      c.p0 = analytic_p0(input, omega);
      break;
    case Source::Kind::Simulator:
      if (source.shots == 0) {
        c.p0 = simulated_p0(input.to_state_vector(), circuit);
        break;
      }
      [[fallthrough]];
    case Source::Kind::Noisy: {
      exact = false;
      const NoiseConfig cfg = source.kind == Source::Kind::Noisy
                                  ? source.noise
                                  : NoiseConfig::zero(source.noise.layout, source.noise.seed);
      const CountsTable counts =
          run_noisy(circuit, with_ancillas(input.to_state_vector()), source.shots, cfg);
      c.p0 = counts.frequency("0");
      c.std_error = std::sqrt(c.p0 * (1.0 - c.p0) / static_cast<double>(source.shots));
      break;
    }
  }

  if (outcome0_class) {
    c.outcome0_class = *outcome0_class;
  } else {
    const auto phi_outcome = analyze_eigenstructure(omega).phi_outcome();
    c.outcome0_class = (phi_outcome && *phi_outcome == 1) ? BellClass::Psi : BellClass::Phi;
  }
  const double tie_tol = exact ? kTolerance : 0.0;
  const auto as_label = [](BellClass b) {
    return b == BellClass::Phi ? ClassLabel::Phi : ClassLabel::Psi;
  };
  if (std::abs(c.p0 - 0.5) <= tie_tol) {
    c.label = ClassLabel::Ambiguous;
  } else {
    c.label = as_label(c.p0 > 0.5 ? c.outcome0_class : opposite(c.outcome0_class));
  }
  return c;
}

nlohmann::json to_json(const Classification& c) {
  return {{"p0", c.p0},
          {"label", std::string(to_string(c.label))},
          {"stderr", c.std_error},
          {"ancilla0_class", std::string(to_string(c.outcome0_class))}};
}

}  // namespace qpeclass
