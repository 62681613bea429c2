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

#include <gtest/gtest.h>

#include <cmath>

#include "qpeclass/metrics.hpp"
#include "qpeclass/noise.hpp"
#include "qpeclass/training.hpp"

namespace qpeclass {
namespace {

const GridSpec kCoarse{-2.0, 0.25, 16, -2.0, 0.25, 16};

TEST(NoiseConfig, JsonRoundTripAndValidation) {
  const NoiseConfig cfg{0.1, 0.2, 0.3, Layout::Toy, 77};
  EXPECT_EQ(noise_from_json(to_json(cfg)), cfg);
  EXPECT_EQ(to_json(cfg).at("layout"), "toy");
  EXPECT_THROW(noise_from_json({{"p1", 0.1}, {"bogus", 1}}), std::invalid_argument);
  EXPECT_THROW(noise_from_json({{"p1", 1.5}}), std::invalid_argument);
  EXPECT_THROW(parse_layout("ring"), std::invalid_argument);
  const NoiseConfig nominal = NoiseConfig::nominal();
  EXPECT_EQ(nominal.p1, 1e-3);
  EXPECT_EQ(nominal.p2, 1e-2);
  EXPECT_EQ(nominal.p_readout, 1e-2);
  EXPECT_TRUE(NoiseConfig::zero().noiseless());
}

TEST(RunNoisy, ZeroNoiseMatchesIdealSampler) {
  const StateVector in = with_ancillas(bell_state(BellLabel::PsiPlus));
  for (const bool data : {false, true}) {
    const Circuit c = build_toy_circuit({0.3, 0.8}, data);
    const CountsTable noisy = run_noisy(c, in, 4096, NoiseConfig::zero(Layout::Toy, 123));
    const CountsTable ideal = sample_counts(run_circuit(in, c), c.measured_qubits, 4096, 123);
    EXPECT_EQ(noisy, ideal);
  }
}

TEST(RunNoisy, Errors) {
  const Circuit c = build_toy_circuit({1, -1});
  EXPECT_THROW(run_noisy(c, StateVector(2), 10, NoiseConfig{}), std::invalid_argument);
  EXPECT_THROW(run_noisy(c, StateVector(3), 0, NoiseConfig{}), std::invalid_argument);
}

TEST(RunNoisy, HalfReadoutFlipRandomizes) {
  NoiseConfig cfg = NoiseConfig::zero(Layout::Toy, 5);
  cfg.p_readout = 0.5;
  const CountsTable c = run_noisy(build_toy_circuit({1, -1}),
                                  with_ancillas(bell_state(BellLabel::PhiPlus)), 8192, cfg);
  EXPECT_NEAR(c.frequency("0"), 0.5, 3.0 * std::sqrt(0.25 / 8192));
}

TEST(RunNoisy, DefaultsCompressTowardHalf) {
  const Circuit c = classifier_circuit(Layout::Hardware, {1, -1}, false);
  const CountsTable t = run_noisy(c, with_ancillas(bell_state(BellLabel::PsiMinus)), 8192, NoiseConfig{});
  const double f1 = t.frequency("1");
  EXPECT_LT(f1, 1.0);
  EXPECT_GT(f1, 0.5);
}

TEST(RunNoisy, Deterministic) {
  const Circuit c = classifier_circuit(Layout::Hardware, {0.4, -0.2}, true);
  const StateVector in = with_ancillas(bell_state(BellLabel::PhiMinus));
  EXPECT_EQ(run_noisy(c, in, 2000, NoiseConfig{}), run_noisy(c, in, 2000, NoiseConfig{}));
  NoiseConfig other;
  other.seed = 1;
  EXPECT_NE(run_noisy(c, in, 2000, NoiseConfig{}), run_noisy(c, in, 2000, other));
}

TEST(NoisyMap, ZeroNoiseWithinBinomialBounds) {
  const TwoQubitState s = bell_amplitudes(BellLabel::PsiMinus);
  const ProbabilityMap ideal = ideal_map(s, kCoarse);
  const NoisyMapResult r = noisy_map(s.to_state_vector(), kCoarse, 8192, NoiseConfig::zero(), false, 1);
  std::size_t inside = 0;
  for (std::size_t k = 0; k < ideal.size(); ++k) {
    const double p = ideal.values()[k];
    const double sigma = std::sqrt(p * (1 - p) / 8192.0);
    if (std::abs(r.map.values()[k] - p) <= 3 * sigma + 1e-12) ++inside;
  }
  EXPECT_GE(static_cast<double>(inside), 0.99 * static_cast<double>(ideal.size()));
}

TEST(NoisyMap, ThreadCountDoesNotChangeResults) {
  const StateVector in = bell_state(BellLabel::PsiMinus);
  const NoisyMapResult one = noisy_map(in, kCoarse, 512, NoiseConfig{}, true, 1);
  const NoisyMapResult four = noisy_map(in, kCoarse, 512, NoiseConfig{}, true, 4);
  EXPECT_EQ(one.map, four.map);
  EXPECT_EQ(one.counts, four.counts);
  EXPECT_EQ(one.counts.size(), kCoarse.size());
  EXPECT_EQ(one.counts.front().counts.begin()->first.size(), 3U);
}

TEST(NoisyMap, ContrastCompression) {
  const NoisyMapResult r =
      noisy_map(bell_state(BellLabel::PsiMinus), kCoarse, 2048, NoiseConfig{}, false, 0);
  EXPECT_GT(r.map.min(), 0.05);
  EXPECT_LT(r.map.max(), 0.95);
}

double mean_pearson(double p2, Layout layout) {
  const TwoQubitState s = bell_amplitudes(BellLabel::PsiMinus);
  const ProbabilityMap ideal = ideal_map(s, kCoarse);
  double total = 0.0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    NoiseConfig cfg = NoiseConfig::zero(layout, seed);
    cfg.p2 = p2;
    total += pearson(noisy_map(s.to_state_vector(), kCoarse, 2048, cfg, false, 0).map, ideal);
  }
  return total / 3.0;
}

TEST(NoisyMap, MonotoneDegradationInTwoQubitRate) {
  double previous = 2.0;
  for (const double p2 : {0.0, 0.005, 0.01, 0.02}) {
    const double p = mean_pearson(p2, Layout::Hardware);
    EXPECT_LE(p, previous + 1e-9) << "p2=" << p2;
    previous = p;
  }
}

TEST(NoisyMap, HardwareLayoutIsNoisier) {
  const TwoQubitState s = bell_amplitudes(BellLabel::PsiMinus);
  const ProbabilityMap ideal = ideal_map(s, kCoarse);
  double toy = 0.0;
  double hw = 0.0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    NoiseConfig cfg;
    cfg.seed = seed;
    cfg.layout = Layout::Toy;
    toy += l1(noisy_map(s.to_state_vector(), kCoarse, 2048, cfg, false, 0).map, ideal);
    cfg.layout = Layout::Hardware;
    hw += l1(noisy_map(s.to_state_vector(), kCoarse, 2048, cfg, false, 0).map, ideal);
  }
  EXPECT_GE(hw, toy);
}

}  // namespace
}  // namespace qpeclass
