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

#include "qpeclass/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qpeclass/random.hpp"

namespace qpeclass {

namespace {

unsigned qubits_for_dim(std::size_t dim) {
  if (dim == 0 || !std::has_single_bit(dim)) {
    throw std::invalid_argument("amplitude count must be a power of two");
  }
  const auto n = static_cast<unsigned>(std::countr_zero(dim));
  if (n > kMaxQubits) throw std::invalid_argument("register too large");
  return n;
}

double squared_norm(const Amplitudes& amps) {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return s;
}

constexpr bool bit(std::uint64_t index, unsigned q) { return (index >> q) & 1U; }

void check_targets(const Gate& gate, unsigned n_qubits) {
  for (std::size_t i = 0; i < gate.targets.size(); ++i) {
    if (gate.targets[i] >= n_qubits) {
      throw std::out_of_range("gate " + std::string(to_string(gate.kind)) +
                              " targets qubit " + std::to_string(gate.targets[i]) +
                              " of a " + std::to_string(n_qubits) +
                              "-qubit register");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (gate.targets[i] == gate.targets[j]) {
        throw std::invalid_argument("gate targets must be distinct");
      }
    }
  }
}

std::size_t expected_arity(GateKind kind) {
  switch (kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::RZ:
      return 1;
    case GateKind::CNOT:
    case GateKind::CRZ:
    case GateKind::CPHASE:
    case GateKind::SWAP:
      return 2;
    case GateKind::CSWAP:
      return 3;
    case GateKind::CDIAG:
      return 0;
  }
  return 0;
}

void apply_1q(Amplitudes& amps, unsigned q, Complex m00, Complex m01, Complex m10,
              Complex m11) {
  const std::size_t stride = std::size_t{1} << q;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (bit(i, q)) continue;
    const Complex a0 = amps[i];
    const Complex a1 = amps[i | stride];
    amps[i] = m00 * a0 + m01 * a1;
    amps[i | stride] = m10 * a0 + m11 * a1;
  }
}

}  // namespace

StateVector::StateVector(unsigned n_qubits)
    : n_qubits_(n_qubits), amplitudes_() {
  if (n_qubits > kMaxQubits) throw std::invalid_argument("register too large");
  amplitudes_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(Amplitudes amplitudes)
    : n_qubits_(qubits_for_dim(amplitudes.size())),
      amplitudes_(std::move(amplitudes)) {
  if (std::abs(std::sqrt(squared_norm(amplitudes_)) - 1.0) > kTolerance) {
    throw std::invalid_argument("state vector is not normalized");
  }
}

StateVector StateVector::basis(unsigned n_qubits, std::uint64_t index) {
  StateVector s(n_qubits);
  if (index >= s.dim()) throw std::out_of_range("basis index out of range");
  Amplitudes amps(s.dim());
  amps[index] = 1.0;
  return StateVector(std::move(amps));
}

StateVector StateVector::normalized(Amplitudes amplitudes) {
  const double n = std::sqrt(squared_norm(amplitudes));
  if (n == 0.0) throw std::invalid_argument("cannot normalize a zero vector");
  for (auto& a : amplitudes) a /= n;
  return StateVector(std::move(amplitudes));
}

double StateVector::norm() const { return std::sqrt(squared_norm(amplitudes_)); }

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(inner_product(a, b));
}

StateVector tensor(const StateVector& low, const StateVector& high) {
  Amplitudes amps(low.dim() * high.dim());
  for (std::size_t h = 0; h < high.dim(); ++h) {
    for (std::size_t l = 0; l < low.dim(); ++l) {
      amps[h * low.dim() + l] = low[l] * high[h];
    }
  }
  return StateVector(std::move(amps));
}

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::RZ: return "RZ";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CRZ: return "CRZ";
    case GateKind::CPHASE: return "CPHASE";
    case GateKind::SWAP: return "SWAP";
    case GateKind::CSWAP: return "CSWAP";
    case GateKind::CDIAG: return "CDIAG";
  }
  return "?";
}

Gate Gate::cdiag(unsigned control, std::vector<unsigned> targets,
                 std::vector<Complex> diagonal) {
  if (targets.empty()) throw std::invalid_argument("CDIAG needs targets");
  if (diagonal.size() != (std::size_t{1} << targets.size())) {
    throw std::invalid_argument("CDIAG diagonal must have 2^targets entries");
  }
  for (const auto& d : diagonal) {
    if (std::abs(std::abs(d) - 1.0) > kTolerance) {
      throw std::invalid_argument("CDIAG entries must have unit modulus");
    }
  }
  Gate g = Gate::make(GateKind::CDIAG, {control});
  g.targets.insert(g.targets.end(), targets.begin(), targets.end());
  g.diagonal = std::move(diagonal);
  return g;
}

void Circuit::validate() const {
  for (const auto& g : gates) {
    check_targets(g, n_qubits);
    const std::size_t arity = expected_arity(g.kind);
    if (arity != 0 && g.targets.size() != arity) {
      throw std::invalid_argument("wrong number of targets for " +
                                  std::string(to_string(g.kind)));
    }
  }
  for (std::size_t i = 0; i < measured_qubits.size(); ++i) {
    if (measured_qubits[i] >= n_qubits) {
      throw std::out_of_range("measured qubit out of range");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (measured_qubits[i] == measured_qubits[j]) {
        throw std::invalid_argument("measured qubits must be distinct");
      }
    }
  }
}

std::size_t Circuit::count(GateKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      gates.begin(), gates.end(), [kind](const Gate& g) { return g.kind == kind; }));
}

Circuit concat(const Circuit& a, const Circuit& b) {
  if (a.n_qubits != b.n_qubits) throw std::invalid_argument("width mismatch");
  Circuit c = a;
  c.gates.insert(c.gates.end(), b.gates.begin(), b.gates.end());
  c.measured_qubits = b.measured_qubits.empty() ? a.measured_qubits : b.measured_qubits;
  return c;
}

std::uint64_t CountsTable::get(const std::string& bits) const {
  const auto it = counts.find(bits);
  return it == counts.end() ? 0 : it->second;
}

double CountsTable::frequency(const std::string& bits) const {
  if (shots == 0) throw std::domain_error("empty counts table");
  return static_cast<double>(get(bits)) / static_cast<double>(shots);
}

std::string bitstring_of(std::uint64_t index, std::span<const unsigned> qubits) {
  std::string s(qubits.size(), '0');
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (bit(index, qubits[i])) s[i] = '1';
  }
  return s;
}

StateVector apply_gate(const StateVector& state, const Gate& gate) {
  check_targets(gate, state.n_qubits());
  const std::size_t arity = expected_arity(gate.kind);
  if (arity != 0 && gate.targets.size() != arity) {
    throw std::invalid_argument("wrong number of targets for " +
                                std::string(to_string(gate.kind)));
  }
  Amplitudes amps = state.amplitudes();
  const auto& t = gate.targets;
  const double half_angle = std::numbers::pi * gate.omega / 2.0;
  const Complex rz_low = std::polar(1.0, -half_angle);
  const Complex rz_high = std::polar(1.0, half_angle);

  switch (gate.kind) {
    case GateKind::H: {
      const double r = std::numbers::sqrt2 / 2.0;
      apply_1q(amps, t[0], r, r, r, -r);
      break;
    }
    case GateKind::X:
      apply_1q(amps, t[0], 0.0, 1.0, 1.0, 0.0);
      break;
    case GateKind::RZ:
      for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] *= bit(i, t[0]) ? rz_high : rz_low;
      }
      break;
    case GateKind::CNOT:
      for (std::size_t i = 0; i < amps.size(); ++i) {
        if (bit(i, t[0]) && !bit(i, t[1])) {
          std::swap(amps[i], amps[i | (std::size_t{1} << t[1])]);
        }
      }
      break;
    case GateKind::CRZ:
      for (std::size_t i = 0; i < amps.size(); ++i) {
        if (bit(i, t[0])) amps[i] *= bit(i, t[1]) ? rz_high : rz_low;
      }
      break;
    case GateKind::CPHASE: {
      const Complex ph = std::polar(1.0, gate.phase);
      for (std::size_t i = 0; i < amps.size(); ++i) {
        if (bit(i, t[0]) && bit(i, t[1])) amps[i] *= ph;
      }
      break;
    }
    case GateKind::SWAP:
    case GateKind::CSWAP: {
      const bool controlled = gate.kind == GateKind::CSWAP;
      const unsigned a = controlled ? t[1] : t[0];
      const unsigned b = controlled ? t[2] : t[1];
      for (std::size_t i = 0; i < amps.size(); ++i) {
        if (controlled && !bit(i, t[0])) continue;
        if (bit(i, a) && !bit(i, b)) {
          const std::size_t j = (i & ~(std::size_t{1} << a)) | (std::size_t{1} << b);
          std::swap(amps[i], amps[j]);
        }
      }
      break;
    }
    case GateKind::CDIAG: {
      if (gate.diagonal.size() != (std::size_t{1} << (t.size() - 1))) {
        throw std::invalid_argument("CDIAG diagonal size mismatch");
      }
      for (std::size_t i = 0; i < amps.size(); ++i) {
        if (!bit(i, t[0])) continue;
        std::size_t k = 0;
        for (std::size_t j = 1; j < t.size(); ++j) {
          if (bit(i, t[j])) k |= std::size_t{1} << (j - 1);
        }
        amps[i] *= gate.diagonal[k];
      }
      break;
    }
  }
  return StateVector(std::move(amps));
}

StateVector apply_pauli(const StateVector& state, unsigned q, char pauli) {
  if (q >= state.n_qubits()) throw std::out_of_range("pauli target out of range");
  Amplitudes amps = state.amplitudes();
  const Complex i{0.0, 1.0};
  switch (pauli) {
    case 'I':
      break;
    case 'X':
      apply_1q(amps, q, 0.0, 1.0, 1.0, 0.0);
      break;
    case 'Y':
      apply_1q(amps, q, 0.0, -i, i, 0.0);
      break;
    case 'Z':
      apply_1q(amps, q, 1.0, 0.0, 0.0, -1.0);
      break;
    default:
      throw std::invalid_argument("unknown Pauli");
  }
  return StateVector(std::move(amps));
}

StateVector run_circuit(const StateVector& input, const Circuit& circuit) {
  if (input.n_qubits() != circuit.n_qubits) {
    throw std::invalid_argument("circuit width " + std::to_string(circuit.n_qubits) +
                                " does not match state width " +
                                std::to_string(input.n_qubits()));
  }
  StateVector s = input;
  for (const auto& g : circuit.gates) s = apply_gate(s, g);
  return s;
}

std::map<std::string, double> measure_probabilities(const StateVector& state,
                                                    std::span<const unsigned> qubits) {
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] >= state.n_qubits()) throw std::out_of_range("qubit out of range");
    for (std::size_t j = 0; j < i; ++j) {
      if (qubits[i] == qubits[j]) throw std::invalid_argument("qubits must be distinct");
    }
  }
  std::map<std::string, double> probs;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    const double p = std::norm(state[i]);
    if (p == 0.0) continue;
    probs[bitstring_of(i, qubits)] += p;
  }
  return probs;
}

double outcome_probability(const StateVector& state, std::span<const unsigned> qubits,
                           const std::string& outcome) {
  if (outcome.size() != qubits.size()) {
    throw std::invalid_argument("outcome length does not match qubit list");
  }
  const auto probs = measure_probabilities(state, qubits);
  const auto it = probs.find(outcome);
  return it == probs.end() ? 0.0 : it->second;
}

CountsTable sample_counts(const StateVector& state, std::span<const unsigned> qubits,
                          std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("shots must be at least 1");
  const OutcomeSampler sampler(measure_probabilities(state, qubits));
  Rng rng(seed);
  CountsTable table;
  table.shots = shots;
  for (std::uint64_t s = 0; s < shots; ++s) ++table.counts[sampler.draw(rng.uniform())];
  return table;
}

StateVector collapse(const StateVector& state, std::span<const unsigned> qubits,
                     const std::string& outcome) {
  const double p = outcome_probability(state, qubits, outcome);
  if (p <= 0.0) throw std::domain_error("outcome " + outcome + " has zero probability");
  Amplitudes amps = state.amplitudes();
  const double scale = 1.0 / std::sqrt(p);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    amps[i] = bitstring_of(i, qubits) == outcome ? amps[i] * scale : Complex{0.0, 0.0};
  }
  return StateVector::normalized(std::move(amps));
}

StateVector extract_low_register(const StateVector& state, unsigned n_low) {
  if (n_low == 0 || n_low > state.n_qubits()) {
    throw std::invalid_argument("bad low-register width");
  }
  const std::size_t low_dim = std::size_t{1} << n_low;
  // Pick the high block carrying the weight.
  std::size_t best = 0;
  double best_weight = -1.0;
  for (std::size_t h = 0; h < state.dim() / low_dim; ++h) {
    double w = 0.0;
    for (std::size_t l = 0; l < low_dim; ++l) w += std::norm(state[h * low_dim + l]);
    if (w > best_weight) {
      best_weight = w;
      best = h;
    }
  }
  if (std::abs(best_weight - 1.0) > kTolerance) {
    throw std::domain_error("high register is not in a basis state");
  }
  Amplitudes amps(state.amplitudes().begin() + static_cast<std::ptrdiff_t>(best * low_dim),
                  state.amplitudes().begin() +
                      static_cast<std::ptrdiff_t>((best + 1) * low_dim));
  return StateVector::normalized(std::move(amps));
}

OutcomeSampler::OutcomeSampler(const std::map<std::string, double>& distribution) {
  double total = 0.0;
  for (const auto& [bits, p] : distribution) {
    if (p <= 0.0) continue;
    total += p;
    outcomes_.push_back(bits);
    cdf_.push_back(total);
  }
  if (outcomes_.empty()) throw std::invalid_argument("empty distribution");
  for (auto& c : cdf_) c /= total;
  cdf_.back() = 1.0;
}

const std::string& OutcomeSampler::draw(double u) const {
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()),
                                       outcomes_.size() - 1);
  return outcomes_[k];
}

}  // namespace qpeclass
