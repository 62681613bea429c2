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

#include "qpeclass/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace qpeclass {

namespace {

void check_same_shape(const ProbabilityMap& a, const ProbabilityMap& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("map dimensions differ: " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                                "x" + std::to_string(b.cols()));
  }
  if (a.size() == 0) throw std::invalid_argument("empty map");
}

}  // namespace

double mean(const ProbabilityMap& m) {
  double s = 0.0;
  for (const double v : m.values()) s += v;
  return s / static_cast<double>(m.size());
}

double variance(const ProbabilityMap& m) {
  const double mu = mean(m);
  double s = 0.0;
  for (const double v : m.values()) s += (v - mu) * (v - mu);
  return s / static_cast<double>(m.size());
}

double mse(const ProbabilityMap& m, const ProbabilityMap& reference) {
  check_same_shape(m, reference);
  double s = 0.0;
  for (std::size_t k = 0; k < m.size(); ++k) {
    const double d = m.values()[k] - reference.values()[k];
    s += d * d;
  }
  return s / static_cast<double>(m.size());
}

double snr(const ProbabilityMap& m, const ProbabilityMap& reference) {
  const double err = mse(m, reference);
  if (err == 0.0) throw IdenticalMapsError();
  return 10.0 * std::log10(variance(m) / err);
}

double l1(const ProbabilityMap& m, const ProbabilityMap& reference) {
  check_same_shape(m, reference);
  double s = 0.0;
  for (std::size_t k = 0; k < m.size(); ++k) {
    s += std::abs(m.values()[k] - reference.values()[k]);
  }
  return s / static_cast<double>(m.size());
}

double pearson(const ProbabilityMap& m, const ProbabilityMap& reference) {
  check_same_shape(m, reference);
  const double mu_a = mean(m);
  const double mu_b = mean(reference);
  double cov = 0.0;
  double var_a = 0.0;
  double var_b = 0.0;
  for (std::size_t k = 0; k < m.size(); ++k) {
    const double da = m.values()[k] - mu_a;
    const double db = reference.values()[k] - mu_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a == 0.0 || var_b == 0.0) throw ZeroVarianceError();
  return std::clamp(cov / std::sqrt(var_a * var_b), -1.0, 1.0);
}

MetricsReport compare(const ProbabilityMap& m, const ProbabilityMap& reference) {
  return {snr(m, reference), l1(m, reference), pearson(m, reference)};
}

nlohmann::json metrics_json(const ProbabilityMap& m, const ProbabilityMap& reference) {
  nlohmann::json j;
  j["l1"] = l1(m, reference);
  try {
    j["snr_db"] = snr(m, reference);
  } catch (const IdenticalMapsError& e) {
    j["snr_db"] = nullptr;
    j["snr_error"] = e.what();
  }
  try {
    j["pearson"] = pearson(m, reference);
  } catch (const ZeroVarianceError& e) {
    j["pearson"] = nullptr;
    j["pearson_error"] = e.what();
  }
  return j;
}

}  // namespace qpeclass
