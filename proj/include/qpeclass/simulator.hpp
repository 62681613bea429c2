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
 * @file simulator.hpp
 * @brief Dense state-vector simulation of small qubit registers.
 *
 * Basis-index convention: qubit 0 is the least-significant bit of the basis
 * index, so amplitude k belongs to the basis state whose qubit q reads
 * (k >> q) & 1. Every operation is a pure function returning a new value.
 */

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace qpeclass {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

/// Tolerance for analytic equalities (norms, probabilities, fidelities).
inline constexpr double kTolerance = 1e-10;

/// Largest register the dense simulator accepts.
inline constexpr unsigned kMaxQubits = 20;

class StateVector {
 public:
  /// |0...0> on n qubits.
  explicit StateVector(unsigned n_qubits);

  /// Wraps explicit amplitudes; the length must be a power of two and the
  /// norm must be 1 within kTolerance.
  explicit StateVector(Amplitudes amplitudes);

  /// Computational basis state |index> on n qubits.
  static StateVector basis(unsigned n_qubits, std::uint64_t index);

  /// Rescales arbitrary nonzero amplitudes to unit norm.
  static StateVector normalized(Amplitudes amplitudes);

  unsigned n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amplitudes_.size(); }
  const Amplitudes& amplitudes() const { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

  double norm() const;

 private:
  unsigned n_qubits_;
  Amplitudes amplitudes_;
};

/// <a|b>
Complex inner_product(const StateVector& a, const StateVector& b);

/// |<a|b>|^2, the equality notion for states (global phase is ignored).
double fidelity(const StateVector& a, const StateVector& b);

/// low ⊗ high: `low` occupies qubits 0..n_low-1, `high` the qubits above.
StateVector tensor(const StateVector& low, const StateVector& high);

enum class GateKind {
  H,       ///< Hadamard
  X,       ///< Pauli X
  RZ,      ///< diag(e^{-iπω/2}, e^{+iπω/2})
  CNOT,    ///< targets = {control, target}
  CRZ,     ///< targets = {control, target}; RZ(ω) applied when control is 1
  CPHASE,  ///< targets = {a, b}; phase e^{iφ} on |11>
  SWAP,    ///< targets = {a, b}
  CSWAP,   ///< targets = {control, a, b}
  CDIAG,   ///< targets = {control, t0, t1, ...}; diagonal phases on targets
};

std::string_view to_string(GateKind kind);

struct Gate {
  GateKind kind;
  std::vector<unsigned> targets;
  /// Rotation parameter of RZ/CRZ.
  double omega = 0.0;
  /// Phase angle (radians) of CPHASE.
  double phase = 0.0;
  /// CDIAG only: 2^(targets.size()-1) unit-modulus entries, indexed with
  /// targets[1] as the least-significant bit.
  std::vector<Complex> diagonal;

  static Gate make(GateKind kind, std::vector<unsigned> targets, double omega = 0.0,
                   double phase = 0.0) {
    return {kind, std::move(targets), omega, phase, {}};
  }
  static Gate h(unsigned q) { return make(GateKind::H, {q}); }
  static Gate x(unsigned q) { return make(GateKind::X, {q}); }
  static Gate rz(unsigned q, double omega) { return make(GateKind::RZ, {q}, omega); }
  static Gate cnot(unsigned c, unsigned t) { return make(GateKind::CNOT, {c, t}); }
  static Gate crz(unsigned c, unsigned t, double omega) {
    return make(GateKind::CRZ, {c, t}, omega);
  }
  static Gate cphase(unsigned a, unsigned b, double phi) {
    return make(GateKind::CPHASE, {a, b}, 0.0, phi);
  }
  static Gate swap(unsigned a, unsigned b) { return make(GateKind::SWAP, {a, b}); }
  static Gate cswap(unsigned c, unsigned a, unsigned b) {
    return make(GateKind::CSWAP, {c, a, b});
  }
  static Gate cdiag(unsigned control, std::vector<unsigned> targets,
                    std::vector<Complex> diagonal);
};

struct Circuit {
  unsigned n_qubits = 0;
  std::vector<Gate> gates;
  /// Measured qubits; bitstrings list their bits in this order.
  std::vector<unsigned> measured_qubits;

  /// Throws std::invalid_argument when a gate target or a measured qubit is
  /// out of range, or indices repeat.
  void validate() const;

  std::size_t count(GateKind kind) const;
};

/// Concatenation a ++ b (same register width).
Circuit concat(const Circuit& a, const Circuit& b);

struct CountsTable {
  std::uint64_t shots = 0;
  std::map<std::string, std::uint64_t> counts;

  std::uint64_t get(const std::string& bits) const;
  double frequency(const std::string& bits) const;

  friend bool operator==(const CountsTable&, const CountsTable&) = default;
};

/// Bitstring over `qubits` (in listed order) for basis index `index`.
std::string bitstring_of(std::uint64_t index, std::span<const unsigned> qubits);

StateVector apply_gate(const StateVector& state, const Gate& gate);

/// Applies a single-qubit Pauli ('I', 'X', 'Y' or 'Z') to qubit q.
StateVector apply_pauli(const StateVector& state, unsigned q, char pauli);

StateVector run_circuit(const StateVector& input, const Circuit& circuit);

/// Marginal Born probabilities over `qubits`, keyed by bitstring. Outcomes
/// with zero probability are omitted.
std::map<std::string, double> measure_probabilities(
    const StateVector& state, std::span<const unsigned> qubits);

/// Probability of the measured bits reading `outcome`.
double outcome_probability(const StateVector& state,
                           std::span<const unsigned> qubits,
                           const std::string& outcome);

/// Multinomial sample of `shots` measurements; deterministic in `seed`.
CountsTable sample_counts(const StateVector& state,
                          std::span<const unsigned> qubits, std::uint64_t shots,
                          std::uint64_t seed);

/// Projects onto `outcome` for `qubits` and renormalizes. Throws
/// std::domain_error when the outcome has zero probability.
StateVector collapse(const StateVector& state, std::span<const unsigned> qubits,
                     const std::string& outcome);

/// Reduced pure state on the low `n_low` qubits, assuming the register above
/// them is in a computational basis state (as after `collapse`).
StateVector extract_low_register(const StateVector& state, unsigned n_low);

}  // namespace qpeclass
