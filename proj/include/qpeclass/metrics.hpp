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
 * @file metrics.hpp
 * @brief Map-comparison metrics: SNR in decibels, mean absolute (L1)
 * difference and Pearson correlation.
 *
 * All statistics use population moments (divide by the cell count). The
 * first argument is the measured or processed map, the second the reference.
 */

#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "qpeclass/probability_map.hpp"

namespace qpeclass {

/// Thrown by `snr` when the two maps coincide (MSE == 0).
class IdenticalMapsError : public std::domain_error {
 public:
  IdenticalMapsError() : std::domain_error("identical maps") {}
};

/// Thrown by `pearson` when either map is constant.
class ZeroVarianceError : public std::domain_error {
 public:
  ZeroVarianceError() : std::domain_error("zero variance") {}
};

struct MetricsReport {
  double snr = 0.0;      ///< dB
  double l1 = 0.0;       ///< mean |m - m'|
  double pearson = 0.0;  ///< [-1, 1]
};

double mean(const ProbabilityMap& m);
double variance(const ProbabilityMap& m);
double mse(const ProbabilityMap& m, const ProbabilityMap& reference);

/// 10·log10(σ²(m) / MSE(m, reference)).
double snr(const ProbabilityMap& m, const ProbabilityMap& reference);
double l1(const ProbabilityMap& m, const ProbabilityMap& reference);
double pearson(const ProbabilityMap& m, const ProbabilityMap& reference);

/// All three metrics; throws whatever the individual metrics throw.
MetricsReport compare(const ProbabilityMap& m, const ProbabilityMap& reference);

/// {"snr_db", "l1", "pearson"}; a metric that is undefined for the pair is
/// written as null with a "<name>_error" string alongside.
nlohmann::json metrics_json(const ProbabilityMap& m, const ProbabilityMap& reference);

}  // namespace qpeclass
