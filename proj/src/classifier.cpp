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

#include "qpeclass/classifier.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qpeclass {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool is_odd(long v) { return (v % 2) != 0; }

std::optional<long> even_multiple(double value, double tol) {
  const double m = std::round(value / 2.0);
  if (std::abs(value - 2.0 * m) <= tol) return static_cast<long>(m);
  return std::nullopt;
}

Complex parity_phase(long m) { return is_odd(m) ? Complex{-1.0, 0.0} : Complex{1.0, 0.0}; }

}  // namespace

void TwoQubitState::validate(double tol) const {
  const double n = std::norm(alpha) + std::norm(beta) + std::norm(gamma) + std::norm(delta);
  if (!std::isfinite(n) || std::abs(n - 1.0) > tol) {
    throw std::invalid_argument("two-qubit state is not normalized (|ψ|² = " +
                                std::to_string(n) + ")");
  }
}

double TwoQubitState::phi_weight() const { return std::norm(alpha) + std::norm(delta); }
double TwoQubitState::psi_weight() const { return std::norm(beta) + std::norm(gamma); }

StateVector TwoQubitState::to_state_vector() const {
  // |xy> -> index x + 2y
  return StateVector(Amplitudes{alpha, gamma, beta, delta});
}

TwoQubitState TwoQubitState::from_state_vector(const StateVector& s) {
  if (s.n_qubits() != 2) throw std::invalid_argument("expected a two-qubit state");
  return {s[0], s[2], s[1], s[3]};
}

BellClass class_of(BellLabel label) {
  return (label == BellLabel::PhiPlus || label == BellLabel::PhiMinus) ? BellClass::Phi
                                                                        : BellClass::Psi;
}

BellClass opposite(BellClass c) { return c == BellClass::Phi ? BellClass::Psi : BellClass::Phi; }

std::string_view to_string(BellLabel label) {
  switch (label) {
    case BellLabel::PhiPlus: return "phi+";
    case BellLabel::PhiMinus: return "phi-";
    case BellLabel::PsiPlus: return "psi+";
    case BellLabel::PsiMinus: return "psi-";
  }
  return "?";
}

std::string_view to_string(BellClass c) { return c == BellClass::Phi ? "Phi" : "Psi"; }

std::optional<BellLabel> parse_bell_label(std::string_view text) {
  const std::string s = lower(text);
  for (const auto label : kAllBellLabels) {
    if (s == to_string(label)) return label;
  }
  return std::nullopt;
}

std::optional<BellClass> parse_bell_class(std::string_view text) {
  const std::string s = lower(text);
  if (s == "phi") return BellClass::Phi;
  if (s == "psi") return BellClass::Psi;
  return std::nullopt;
}

TwoQubitState bell_amplitudes(BellLabel label) {
  const double r = std::numbers::sqrt2 / 2.0;
  switch (label) {
    case BellLabel::PhiPlus: return {r, 0.0, 0.0, r};
    case BellLabel::PhiMinus: return {r, 0.0, 0.0, -r};
    case BellLabel::PsiPlus: return {0.0, r, r, 0.0};
    case BellLabel::PsiMinus: return {0.0, -r, r, 0.0};
  }
  throw std::invalid_argument("unknown Bell label");
}

StateVector bell_state(BellLabel label) { return bell_amplitudes(label).to_state_vector(); }

std::optional<int> EigenReport::phi_outcome() const {
  if (!deterministic) return std::nullopt;
  return is_odd(*k) ? 1 : 0;
}

EigenReport analyze_eigenstructure(const OmegaPoint& omega, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  EigenReport r;
  r.k = even_multiple(omega.omega1 + omega.omega2, tol);
  r.q = even_multiple(omega.omega1 - omega.omega2, tol);
  if (r.k) r.u_phi = parity_phase(*r.k);
  if (r.q) r.u_psi = parity_phase(*r.q);
  r.deterministic = r.k && r.q && (is_odd(*r.k) != is_odd(*r.q));
  return r;
}

StateVector with_ancillas(const StateVector& data, unsigned n_ancilla) {
  return tensor(data, StateVector(n_ancilla));
}

Circuit build_toy_circuit(const OmegaPoint& omega, bool measure_data) {
  Circuit c;
  c.n_qubits = kClassifierQubits;
  c.gates = {Gate::h(kAncilla), Gate::crz(kAncilla, kData0, omega.omega1),
             Gate::crz(kAncilla, kData1, omega.omega2), Gate::h(kAncilla)};
  c.measured_qubits = {kAncilla};
  if (measure_data) {
    c.measured_qubits.push_back(kData0);
    c.measured_qubits.push_back(kData1);
  }
  return c;
}

Circuit build_hardware_circuit(const OmegaPoint& omega, bool measure_data) {
  Circuit c;
  c.n_qubits = kClassifierQubits;
  c.gates = {Gate::h(kAncilla),
             Gate::crz(kAncilla, kData0, omega.omega1),
             Gate::cnot(kData0, kData1),
             Gate::cnot(kData1, kData0),
             Gate::cnot(kData0, kData1),
             Gate::crz(kAncilla, kData0, omega.omega2),
             Gate::h(kAncilla)};
  c.measured_qubits = {kAncilla};
  if (measure_data) {
    c.measured_qubits.push_back(kData0);
    c.measured_qubits.push_back(kData1);
  }
  return c;
}

StateVector undo_hardware_relabeling(const StateVector& output) {
  return apply_gate(output, Gate::swap(kData0, kData1));
}

std::vector<Complex> toy_unitary_diagonal(const OmegaPoint& omega) {
  const auto rz = [](double w, bool one) {
    return std::polar(1.0, (one ? 1.0 : -1.0) * std::numbers::pi * w / 2.0);
  };
  std::vector<Complex> diag(4);
  for (unsigned idx = 0; idx < 4; ++idx) {
    diag[idx] = rz(omega.omega1, idx & 1U) * rz(omega.omega2, (idx >> 1) & 1U);
  }
  return diag;
}

Circuit build_pea_circuit(std::span<const Complex> u_diag, unsigned n_ancilla) {
  if (n_ancilla < 1) throw std::invalid_argument("at least one ancilla is required");
  if (u_diag.size() < 2 || !std::has_single_bit(u_diag.size())) {
    throw std::invalid_argument("diagonal length must be 2^d with d >= 1");
  }
  for (const auto& u : u_diag) {
    if (std::abs(std::abs(u) - 1.0) > kTolerance) {
      throw std::invalid_argument("eigenphases must have unit modulus");
    }
  }
  const auto d = static_cast<unsigned>(std::countr_zero(u_diag.size()));
  Circuit c;
  c.n_qubits = d + n_ancilla;
  if (c.n_qubits > kMaxQubits) throw std::invalid_argument("register too large");

  std::vector<unsigned> data(d);
  for (unsigned i = 0; i < d; ++i) data[i] = i;
  const auto anc = [d](unsigned j) { return d + j; };

  for (unsigned j = 0; j < n_ancilla; ++j) c.gates.push_back(Gate::h(anc(j)));

  // Ancilla j controls U^(2^j); powers of a diagonal unitary stay diagonal.
  std::vector<Complex> power(u_diag.begin(), u_diag.end());
  for (unsigned j = 0; j < n_ancilla; ++j) {
    c.gates.push_back(Gate::cdiag(anc(j), data, power));
    for (auto& p : power) p = p * p / std::abs(p * p);
  }

  // Inverse QFT: the QFT (Hadamards, controlled-phase ladder, bit reversal)
  // run backwards with conjugated phases.
  std::vector<Gate> qft;
  for (unsigned m = n_ancilla; m-- > 0;) {
    qft.push_back(Gate::h(anc(m)));
    for (unsigned l = m; l-- > 0;) {
      const double angle = 2.0 * std::numbers::pi / std::ldexp(1.0, static_cast<int>(m - l + 1));
      qft.push_back(Gate::cphase(anc(l), anc(m), angle));
    }
  }
  for (unsigned j = 0; j < n_ancilla / 2; ++j) {
    qft.push_back(Gate::swap(anc(j), anc(n_ancilla - 1 - j)));
  }
  for (auto it = qft.rbegin(); it != qft.rend(); ++it) {
    Gate g = *it;
    g.phase = -g.phase;
    c.gates.push_back(std::move(g));
  }

  for (unsigned j = n_ancilla; j-- > 0;) c.measured_qubits.push_back(anc(j));
  c.validate();
  return c;
}

std::uint64_t readout_value(std::string_view bits) {
  std::uint64_t v = 0;
  for (const char ch : bits) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("not a bitstring");
    v = (v << 1) | static_cast<std::uint64_t>(ch == '1');
  }
  return v;
}

double analytic_p0(const TwoQubitState& state, const OmegaPoint& omega) {
  state.validate();
  const double half_pi = std::numbers::pi / 2.0;
  const double p =
      0.5 + 0.5 * state.phi_weight() * std::cos(half_pi * (omega.omega1 + omega.omega2)) +
      0.5 * state.psi_weight() * std::cos(half_pi * (omega.omega1 - omega.omega2));
  return std::clamp(p, 0.0, 1.0);
}

double analytic_p0_optimal(const TwoQubitState& state) {
  state.validate();
  return std::clamp(0.5 + state.phi_weight() / 2.0 - state.psi_weight() / 2.0, 0.0, 1.0);
}

double simulated_p0(const StateVector& data, const Circuit& circuit) {
  if (circuit.measured_qubits.empty()) throw std::invalid_argument("nothing measured");
  const StateVector out = run_circuit(with_ancillas(data, circuit.n_qubits - data.n_qubits()),
                                      circuit);
  const unsigned anc = circuit.measured_qubits.front();
  const std::vector<unsigned> q{anc};
  return outcome_probability(out, q, "0");
}

Circuit build_swap_test_circuit(unsigned n_qubits_per_state) {
  if (n_qubits_per_state == 0) throw std::invalid_argument("empty registers");
  Circuit c;
  c.n_qubits = 2 * n_qubits_per_state + 1;
  const unsigned anc = 2 * n_qubits_per_state;
  c.gates.push_back(Gate::h(anc));
  for (unsigned i = 0; i < n_qubits_per_state; ++i) {
    c.gates.push_back(Gate::cswap(anc, i, n_qubits_per_state + i));
  }
  c.gates.push_back(Gate::h(anc));
  c.measured_qubits = {anc};
  c.validate();
  return c;
}

double swap_test(const StateVector& a, const StateVector& b, std::uint64_t shots,
                 std::uint64_t seed) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("dimension mismatch");
  const Circuit c = build_swap_test_circuit(a.n_qubits());
  const StateVector out = run_circuit(tensor(tensor(a, b), StateVector(1)), c);
  double p0 = 0.0;
  if (shots == 0) {
    p0 = outcome_probability(out, c.measured_qubits, "0");
  } else {
    p0 = sample_counts(out, c.measured_qubits, shots, seed).frequency("0");
  }
  return std::clamp(2.0 * p0 - 1.0, 0.0, 1.0);
}

}  // namespace qpeclass
