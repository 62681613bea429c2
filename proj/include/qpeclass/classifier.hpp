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
 * @file classifier.hpp
 * @brief Phase-estimation classifier circuits for two-qubit parity classes.
 *
 * The classifier applies controlled-U(ω₁, ω₂) = controlled RZ(ω₁) ⊗ RZ(ω₂)
 * between two Hadamards on a single ancilla. Bell states of the Φ class
 * (span{|00>,|11>}) pick up the phase e^{-iπk} when ω₁+ω₂ = 2k and those of
 * the Ψ class (span{|01>,|10>}) pick up e^{-iπq} when ω₁-ω₂ = 2q, so opposite
 * parities of k and q send the two classes to opposite ancilla outcomes while
 * the data register passes through untouched.
 *
 * Register layout: data qubits first (indices 0..d-1), ancillas above them.
 * For the two-qubit classifier, data qubit 0 carries ω₁ and data qubit 1
 * carries ω₂. A label |xy> names x as the state of data qubit 0 and y as the
 * state of data qubit 1, so |xy> has basis index x + 2y.
 */

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "qpeclass/simulator.hpp"

namespace qpeclass {

inline constexpr unsigned kData0 = 0;
inline constexpr unsigned kData1 = 1;
inline constexpr unsigned kAncilla = 2;
inline constexpr unsigned kClassifierQubits = 3;

/// Default tolerance on |ω₁ ± ω₂ - 2m| in analyze_eigenstructure.
inline constexpr double kEigenTolerance = 1e-9;

/// α|00> + β|01> + γ|10> + δ|11>.
struct TwoQubitState {
  Complex alpha;
  Complex beta;
  Complex gamma;
  Complex delta;

  /// Throws std::invalid_argument unless the norm is 1 within `tol`.
  void validate(double tol = kTolerance) const;

  /// |α|² + |δ|², the weight on the Φ-class subspace.
  double phi_weight() const;
  /// |β|² + |γ|², the weight on the Ψ-class subspace.
  double psi_weight() const;

  StateVector to_state_vector() const;
  static TwoQubitState from_state_vector(const StateVector& s);
};

struct OmegaPoint {
  double omega1 = 0.0;
  double omega2 = 0.0;

  friend bool operator==(const OmegaPoint&, const OmegaPoint&) = default;
};

enum class BellLabel { PhiPlus, PhiMinus, PsiPlus, PsiMinus };
enum class BellClass { Phi, Psi };

inline constexpr BellLabel kAllBellLabels[] = {BellLabel::PhiPlus, BellLabel::PhiMinus,
                                              BellLabel::PsiPlus, BellLabel::PsiMinus};

BellClass class_of(BellLabel label);
BellClass opposite(BellClass c);
std::string_view to_string(BellLabel label);
std::string_view to_string(BellClass c);
/// Accepts "phi+", "phi-", "psi+", "psi-" (case-insensitive).
std::optional<BellLabel> parse_bell_label(std::string_view text);
/// Accepts "phi" or "psi" (case-insensitive).
std::optional<BellClass> parse_bell_class(std::string_view text);

TwoQubitState bell_amplitudes(BellLabel label);
StateVector bell_state(BellLabel label);

/// Eigen-analysis of U(ω₁, ω₂) on the Bell classes.
struct EigenReport {
  std::optional<long> k;  ///< ω₁ + ω₂ = 2k
  std::optional<long> q;  ///< ω₁ - ω₂ = 2q
  std::optional<Complex> u_phi;
  std::optional<Complex> u_psi;
  bool deterministic = false;

  /// Ancilla outcome carried by the Φ class at a deterministic point.
  std::optional<int> phi_outcome() const;
};

EigenReport analyze_eigenstructure(const OmegaPoint& omega,
                                   double tol = kEigenTolerance);

/// Data register ⊗ |0> ancilla(s).
StateVector with_ancillas(const StateVector& data, unsigned n_ancilla = 1);

/// H(anc), CRZ(anc→data0, ω₁), CRZ(anc→data1, ω₂), H(anc). Measures the
/// ancilla, followed by data0 and data1 when `measure_data` is set.
Circuit build_toy_circuit(const OmegaPoint& omega, bool measure_data = false);

/// Same classifier routed through a SWAP of the data qubits (three CNOTs)
/// between the two controlled rotations, both of which then act on data
/// qubit 0. On exit, the physical data qubits hold the logical ones in
/// swapped order; see `undo_hardware_relabeling`.
Circuit build_hardware_circuit(const OmegaPoint& omega, bool measure_data = false);

/// Swaps data qubits 0 and 1 back to logical order after the hardware layout.
StateVector undo_hardware_relabeling(const StateVector& output);

/// Phase estimation of a diagonal unitary with eigenphases `u_diag` (one per
/// data basis state) on `n_ancilla` ancillas. Measured qubits are the
/// ancillas, most significant first, so the bitstring reads as the binary
/// readout n of the eigenvalue e^{2πin/2^n_ancilla}.
Circuit build_pea_circuit(std::span<const Complex> u_diag, unsigned n_ancilla);

/// Diagonal of U_z1(ω₁)U_z2(ω₂) on the data basis (index x + 2y).
std::vector<Complex> toy_unitary_diagonal(const OmegaPoint& omega);

/// Parses an MSB-first ancilla bitstring.
std::uint64_t readout_value(std::string_view bits);

/// Closed-form ancilla-0 probability of the toy classifier at any (ω₁, ω₂).
double analytic_p0(const TwoQubitState& state, const OmegaPoint& omega);

/// Closed form at ω₁ = -ω₂ = 1: 1/2 + (|α|²+|δ|²)/2 - (|β|²+|γ|²)/2.
double analytic_p0_optimal(const TwoQubitState& state);

/// Exact ancilla-0 probability by simulating `circuit` on data ⊗ |0>.
double simulated_p0(const StateVector& data, const Circuit& circuit);

/// Ancilla H, controlled-SWAP of each qubit pair, ancilla H.
Circuit build_swap_test_circuit(unsigned n_qubits_per_state);

/// Estimates |<a|b>|² as clamp(2·P(ancilla=0) - 1, 0, 1). `shots == 0` is
/// exact mode.
double swap_test(const StateVector& a, const StateVector& b, std::uint64_t shots,
                 std::uint64_t seed);

}  // namespace qpeclass
