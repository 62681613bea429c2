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
#include <random>
#include <set>

#include "oracles.hpp"
#include "qpeclass/training.hpp"

namespace qpeclass {
namespace {

using IndexSet = std::set<std::pair<std::size_t, std::size_t>>;

IndexSet indices(const TrainingResult& r) {
  IndexSet s;
  for (const auto& p : r.points) s.insert({p.i, p.j});
  return s;
}

// Brute-force search over the overlap form, independent of the library.
IndexSet brute_force_points(const GridSpec& g, double tol) {
  const double s = 1.0 / std::sqrt(2.0);
  const oracle::C zero{};
  const std::vector<std::pair<std::array<oracle::C, 4>, bool>> states{
      {{s, zero, zero, s}, true},
      {{s, zero, zero, -s}, true},
      {{zero, s, s, zero}, false},
      {{zero, -s, s, zero}, false}};
  IndexSet out;
  for (std::size_t i = 0; i < g.n1; ++i) {
    for (std::size_t j = 0; j < g.n2; ++j) {
      for (const bool phi_zero : {true, false}) {
        bool ok = true;
        for (const auto& [a, is_phi] : states) {
          const double p = oracle::overlap_p0(a[0], a[1], a[2], a[3], g.omega1(i), g.omega2(j));
          ok = ok && std::abs(p - ((is_phi == phi_zero) ? 1.0 : 0.0)) <= tol;
        }
        if (ok) out.insert({i, j});
      }
    }
  }
  return out;
}

TEST(Grid, DefaultContainsUnitPoints) {
  const GridSpec g;
  EXPECT_EQ(g.size(), 1600U);
  EXPECT_DOUBLE_EQ(g.omega1(10), -1.0);
  EXPECT_NEAR(g.omega1(30), 1.0, 1e-12);
  EXPECT_NEAR(g.omega2(39), 1.9, 1e-12);
}

TEST(IdealMap, Examples) {
  const GridSpec g;
  const ProbabilityMap phi = ideal_map(bell_amplitudes(BellLabel::PhiPlus), g);
  EXPECT_NEAR(phi.at(30, 10), 1.0, 1e-12);
  EXPECT_NEAR(phi.at(30, 30), 0.0, 1e-12);
  const ProbabilityMap psi = ideal_map(bell_amplitudes(BellLabel::PsiMinus), g);
  EXPECT_NEAR(psi.at(20, 20), 1.0, 1e-12);
  for (const auto label : kAllBellLabels) {
    const ProbabilityMap m = ideal_map(bell_amplitudes(label), g);
    for (std::size_t i = 0; i < g.n1; ++i) {
      for (std::size_t j = 0; j < g.n2; ++j) EXPECT_NEAR(m.at(i, j), m.at(j, i), 1e-12);
    }
  }
}

TEST(IdealMap, SimulatorAgrees) {
  const GridSpec g{-2.0, 0.3, 14, -1.5, 0.2, 11};
  std::mt19937_64 rng(1);
  const oracle::Vec v = oracle::random_state(rng, 4);
  const TwoQubitState s{v[0], v[1], v[2], v[3]};
  const ProbabilityMap a = ideal_map(s, g);
  for (const Layout layout : {Layout::Toy, Layout::Hardware}) {
    const ProbabilityMap b = simulated_map(s, g, layout);
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a.values()[k], b.values()[k], 1e-10);
  }
}

TEST(TrainGrid, AnalyticFindsFourPoints) {
  const GridSpec g;
  const TrainingResult r = train_grid(bell_training_set(), g, Source::analytic(), 1e-9);
  const IndexSet expected{{10, 10}, {10, 30}, {30, 10}, {30, 30}};
  EXPECT_EQ(indices(r), expected);
  EXPECT_EQ(brute_force_points(g, 1e-9), expected);
  for (const auto& p : r.points) {
    const BellClass want = analyze_eigenstructure(p.omega).phi_outcome() == 0 ? BellClass::Phi
                                                                               : BellClass::Psi;
    EXPECT_EQ(p.outcome0_class, want);
    EXPECT_LE(p.score, 1e-9);
  }
  EXPECT_TRUE(r.note.empty());
}

TEST(TrainGrid, ExactSimulatorMatchesAnalytic) {
  const GridSpec g;
  const auto a = train_grid(bell_training_set(), g, Source::analytic(), 1e-9);
  const auto s = train_grid(bell_training_set(), g, Source::simulator(0), 1e-9);
  EXPECT_EQ(indices(a), indices(s));
  const auto h = train_grid(bell_training_set(), g, Source::simulator(0, Layout::Hardware), 1e-9);
  EXPECT_EQ(indices(a), indices(h));
}

TEST(TrainGrid, SampledSourceTolerance) {
  const GridSpec g;
  const IndexSet four{{10, 10}, {10, 30}, {30, 10}, {30, 30}};
  // Below one count the sampled deterministic points are the only survivors.
  const auto strict = train_grid(bell_training_set(), g, Source::simulator(8192), 0.5 / 8192);
  EXPECT_EQ(indices(strict), four);

  // At the 2/sqrt(shots) default the rule also admits grid neighbours whose
  // ideal values sit within about 0.006 of the extremes.
  const double tol = default_sampling_tol(8192);
  EXPECT_NEAR(tol, 0.0221, 1e-4);
  const IndexSet loose = indices(train_grid(bell_training_set(), g, Source::simulator(8192), tol));
  for (const auto& p : four) EXPECT_TRUE(loose.count(p));
  for (const auto& [i, j] : loose) {
    bool near = false;
    for (const auto& [a, b] : four) {
      near = near || (std::max(i, a) - std::min(i, a) <= 1 && std::max(j, b) - std::min(j, b) <= 1);
    }
    EXPECT_TRUE(near) << i << "," << j;
  }
  for (const auto& p : brute_force_points(g, 0.01)) EXPECT_TRUE(loose.count(p));
}

TEST(TrainGrid, NoisySourceIsEmpty) {
  const GridSpec g{-2.0, 0.5, 8, -2.0, 0.5, 8};
  const auto r = train_grid(bell_training_set(), g, Source::noisy(NoiseConfig{}, 2048), 0.02);
  EXPECT_TRUE(r.points.empty());
  EXPECT_FALSE(r.note.empty());
  EXPECT_TRUE(to_json(r).contains("note"));
}

TEST(TrainGrid, LabelSymmetry) {
  const GridSpec g;
  auto flipped = bell_training_set();
  for (auto& e : flipped) e.label = opposite(e.label);
  const auto a = train_grid(bell_training_set(), g, Source::analytic(), 1e-9);
  const auto b = train_grid(flipped, g, Source::analytic(), 1e-9);
  ASSERT_EQ(a.points.size(), b.points.size());
  for (std::size_t k = 0; k < a.points.size(); ++k) {
    EXPECT_EQ(a.points[k].i, b.points[k].i);
    EXPECT_EQ(a.points[k].j, b.points[k].j);
    EXPECT_EQ(b.points[k].outcome0_class, opposite(a.points[k].outcome0_class));
  }
}

TEST(TrainGrid, NeedsBothClasses) {
  auto only_phi = bell_training_set();
  only_phi.resize(2);
  EXPECT_THROW(train_grid(only_phi, GridSpec{}, Source::analytic(), 1e-9), std::invalid_argument);
}

TEST(Classify, Examples) {
  const auto c = classify(bell_amplitudes(BellLabel::PhiMinus), {1, -1}, Source::analytic());
  EXPECT_DOUBLE_EQ(c.p0, 1.0);
  EXPECT_EQ(c.label, ClassLabel::Phi);
  EXPECT_EQ(c.std_error, 0.0);

  const double s = 1.0 / std::sqrt(2.0);
  const auto amb = classify({s, s, 0.0, 0.0}, {1, -1}, Source::simulator(0));
  EXPECT_NEAR(amb.p0, 0.5, 1e-12);
  EXPECT_EQ(amb.label, ClassLabel::Ambiguous);

  const auto swapped = classify(bell_amplitudes(BellLabel::PsiPlus), {1, 1}, Source::analytic());
  EXPECT_NEAR(swapped.p0, 1.0, 1e-12);
  EXPECT_EQ(swapped.outcome0_class, BellClass::Psi);
  EXPECT_EQ(swapped.label, ClassLabel::Psi);
}

TEST(Classify, OverlapDifference) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const oracle::Vec v = oracle::random_state(rng, 4);
    const TwoQubitState st{v[0], v[1], v[2], v[3]};
    const double diff = st.phi_weight() - st.psi_weight();
    EXPECT_NEAR(classify(st, {1, -1}, Source::analytic()).p0 - 0.5, diff / 2.0, 1e-10);
  }
}

TEST(Classify, SampledStandardError) {
  const auto c = classify(bell_amplitudes(BellLabel::PsiMinus), {0.5, -0.5}, Source::simulator(4096));
  EXPECT_NEAR(c.std_error, std::sqrt(c.p0 * (1 - c.p0) / 4096), 1e-15);
  EXPECT_NEAR(c.p0, analytic_p0(bell_amplitudes(BellLabel::PsiMinus), {0.5, -0.5}),
              4 * std::sqrt(0.25 / 4096));
}

TEST(Classify, LabelsAtAllOptimalPoints) {
  const auto r = train_grid(bell_training_set(), GridSpec{}, Source::analytic(), 1e-9);
  for (const auto& p : r.points) {
    for (const auto label : kAllBellLabels) {
      const auto c = classify(bell_amplitudes(label), p.omega, Source::analytic(), p.outcome0_class);
      const ClassLabel want = class_of(label) == BellClass::Phi ? ClassLabel::Phi : ClassLabel::Psi;
      EXPECT_EQ(c.label, want);
      EXPECT_EQ(classify(bell_amplitudes(label), p.omega, Source::analytic()).label, want);
    }
  }
}

}  // namespace
}  // namespace qpeclass
