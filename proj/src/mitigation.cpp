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

#include "qpeclass/mitigation.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace qpeclass {

namespace {

void check_window(int window) {
  if (window < 1 || window % 2 == 0) {
    throw std::invalid_argument("window must be a positive odd integer");
  }
}

bool in_parity_subspace(char d0, char d1, BellClass c) {
  const bool odd = d0 != d1;
  return c == BellClass::Psi ? odd : !odd;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

double ancilla_zero_frequency(const CountsTable& t) {
  std::uint64_t zeros = 0;
  for (const auto& [bits, n] : t.counts) {
    if (!bits.empty() && bits.front() == '0') zeros += n;
  }
  return static_cast<double>(zeros) / static_cast<double>(t.shots);
}

}  // namespace

PostselectResult postselect(const CountsTable& counts, BellClass input_class) {
  PostselectResult r;
  std::uint64_t total = 0;
  std::uint64_t zeros = 0;
  for (const auto& [bits, n] : counts.counts) {
    if (bits.size() < 3) {
      throw std::invalid_argument("postselection needs ancilla and both data bits, got '" +
                                  bits + "'");
    }
    total += n;
    if (!in_parity_subspace(bits[1], bits[2], input_class)) continue;
    if (n == 0) continue;
    r.kept.counts[bits] = n;
    r.kept.shots += n;
    if (bits[0] == '0') zeros += n;
  }
  if (total != counts.shots) throw std::invalid_argument("counts do not sum to shots");
  if (total == 0) throw std::invalid_argument("empty counts table");
  r.discard_fraction =
      static_cast<double>(total - r.kept.shots) / static_cast<double>(total);
  if (r.kept.shots > 0) {
    r.p0 = static_cast<double>(zeros) / static_cast<double>(r.kept.shots);
  }
  return r;
}

ProbabilityMap normalize(const ProbabilityMap& map) {
  const double lo = map.min();
  const double hi = map.max();
  if (!(hi > lo)) throw ConstantMapError();
  std::vector<double> out(map.values());
  for (auto& v : out) v = (v - lo) / (hi - lo);
  return ProbabilityMap(map.grid(), std::move(out));
}

double window_mean(const ProbabilityMap& map, std::size_t i, std::size_t j, int window) {
  check_window(window);
  const auto half = static_cast<std::ptrdiff_t>(window / 2);
  const auto rows = static_cast<std::ptrdiff_t>(map.rows());
  const auto cols = static_cast<std::ptrdiff_t>(map.cols());
  const auto ci = static_cast<std::ptrdiff_t>(i);
  const auto cj = static_cast<std::ptrdiff_t>(j);
  double sum = 0.0;
  int n = 0;
  for (auto r = std::max<std::ptrdiff_t>(0, ci - half); r <= std::min(rows - 1, ci + half); ++r) {
    for (auto c = std::max<std::ptrdiff_t>(0, cj - half); c <= std::min(cols - 1, cj + half);
         ++c) {
      sum += map.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      ++n;
    }
  }
  return sum / n;
}

double mean_near_max(const ProbabilityMap& map, int window) {
  const std::size_t k = map.argmax();
  return window_mean(map, k / map.cols(), k % map.cols(), window);
}

double steepness_for(double f_max) {
  if (!(f_max > kSigmoidMidpoint)) {
    throw std::domain_error("windowed maximum mean must exceed 0.5 to fit the sigmoid");
  }
  // 1 / (1 + exp(-a (f - 1/2))) = 0.9  <=>  a = ln(9) / (f - 1/2)
  return std::log(kSigmoidTarget / (1.0 - kSigmoidTarget)) / (f_max - kSigmoidMidpoint);
}

SigmoidParams fit_sigmoid_a(const ProbabilityMap& map, int window) {
  return {steepness_for(mean_near_max(map, window)), kSigmoidMidpoint};
}

ProbabilityMap sigmoid(const ProbabilityMap& map, const SigmoidParams& params) {
  if (!(params.a > 0.0)) throw std::invalid_argument("sigmoid steepness must be positive");
  std::vector<double> out(map.values());
  for (auto& v : out) v = 1.0 / (1.0 + std::exp(-params.a * (v - params.b)));
  return ProbabilityMap(map.grid(), std::move(out));
}

ProbabilityMap mean_filter(const ProbabilityMap& map, int window) {
  check_window(window);
  ProbabilityMap out(map.grid());
  for (std::size_t i = 0; i < map.rows(); ++i) {
    for (std::size_t j = 0; j < map.cols(); ++j) out.at(i, j) = window_mean(map, i, j, window);
  }
  return out;
}

void write_counts_csv(std::ostream& out, const CountsGrid& counts) {
  out << grid_header(counts.grid) << '\n';
  out << "omega1_index,omega2_index,bitstring,count\n";
  for (std::size_t idx = 0; idx < counts.cells.size(); ++idx) {
    const std::size_t i = idx / counts.grid.n2;
    const std::size_t j = idx % counts.grid.n2;
    for (const auto& [bits, n] : counts.cells[idx].counts) {
      out << i << ',' << j << ',' << bits << ',' << n << '\n';
    }
  }
}

CountsGrid read_counts_csv(std::istream& in, const std::optional<GridSpec>& grid) {
  std::string line;
  std::optional<GridSpec> spec = grid;
  std::vector<std::tuple<std::size_t, std::size_t, std::string, std::uint64_t>> rows;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const GridSpec header = parse_grid_header(line);
      if (spec && !(*spec == header)) {
        throw std::invalid_argument("counts grid header does not match the reference grid");
      }
      spec = header;
      continue;
    }
    if (line.rfind("omega1_index", 0) == 0) continue;
    std::istringstream fields(line);
    std::string f[4];
    for (int k = 0; k < 4; ++k) {
      if (!std::getline(fields, f[k], ',')) {
        throw std::invalid_argument("counts line " + std::to_string(line_no) +
                                    " needs four fields");
      }
      f[k] = trim(f[k]);
    }
    try {
      rows.emplace_back(std::stoull(f[0]), std::stoull(f[1]), f[2], std::stoull(f[3]));
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed counts line " + std::to_string(line_no));
    }
    if (f[2].find_first_not_of("01") != std::string::npos) {
      throw std::invalid_argument("bad bitstring on counts line " + std::to_string(line_no));
    }
  }
  if (!spec) throw std::invalid_argument("counts file has no grid header and no grid was given");
  spec->validate();
  CountsGrid out{*spec, std::vector<CountsTable>(spec->size())};
  for (auto& [i, j, bits, n] : rows) {
    if (i >= spec->n1 || j >= spec->n2) {
      throw std::invalid_argument("counts index (" + std::to_string(i) + "," + std::to_string(j) +
                                  ") outside the grid");
    }
    auto& cell = out.cells[i * spec->n2 + j];
    cell.counts[bits] += n;
    cell.shots += n;
  }
  for (std::size_t idx = 0; idx < out.cells.size(); ++idx) {
    if (out.cells[idx].shots == 0) {
      throw std::invalid_argument("no counts for grid point " + std::to_string(idx / spec->n2) +
                                  "," + std::to_string(idx % spec->n2));
    }
  }
  return out;
}

ProbabilityMap raw_ancilla_map(const CountsGrid& counts) {
  if (counts.cells.size() != counts.grid.size()) {
    throw std::invalid_argument("counts do not cover the grid");
  }
  ProbabilityMap m(counts.grid);
  for (std::size_t idx = 0; idx < counts.cells.size(); ++idx) {
    m.at(idx / counts.grid.n2, idx % counts.grid.n2) = ancilla_zero_frequency(counts.cells[idx]);
  }
  return m;
}

MetricsReport compare_lenient(const ProbabilityMap& m, const ProbabilityMap& reference) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  MetricsReport r{nan, l1(m, reference), nan};
  try {
    r.snr = snr(m, reference);
  } catch (const IdenticalMapsError&) {
  }
  try {
    r.pearson = pearson(m, reference);
  } catch (const ZeroVarianceError&) {
  }
  return r;
}

PipelineReport run_pipeline(const CountsGrid& counts, BellClass input_class,
                            const ProbabilityMap& reference, const PipelineOptions& options) {
  check_window(options.window);
  const GridSpec& grid = counts.grid;
  if (reference.rows() != grid.n1 || reference.cols() != grid.n2) {
    throw std::invalid_argument("reference map does not match the counts grid");
  }

  PipelineReport report;
  report.raw_map = raw_ancilla_map(counts);
  report.raw_metrics = compare_lenient(report.raw_map, reference);

  ProbabilityMap selected(grid);
  report.discard_fraction = ProbabilityMap(grid);
  for (std::size_t idx = 0; idx < counts.cells.size(); ++idx) {
    const std::size_t i = idx / grid.n2;
    const std::size_t j = idx % grid.n2;
    const PostselectResult ps = postselect(counts.cells[idx], input_class);
    if (!ps.p0) {
      throw std::domain_error("postselection discarded every shot at grid point " +
                              std::to_string(i) + "," + std::to_string(j));
    }
    selected.at(i, j) = *ps.p0;
    report.discard_fraction.at(i, j) = ps.discard_fraction;
  }

  const ProbabilityMap normalized = normalize(selected);
  report.f_max = mean_near_max(normalized, options.window);
  report.sigmoid = options.steepness ? SigmoidParams{*options.steepness, kSigmoidMidpoint}
                                     : SigmoidParams{steepness_for(report.f_max), kSigmoidMidpoint};
  const ProbabilityMap contrasted = sigmoid(normalized, report.sigmoid);
  const ProbabilityMap filtered = mean_filter(contrasted, options.window);
  const ProbabilityMap renormalized = normalize(filtered);
  const ProbabilityMap final_map = sigmoid(renormalized, report.sigmoid);

  const ProbabilityMap* maps[6] = {&selected, &normalized, &contrasted,
                                   &filtered, &renormalized, &final_map};
  static constexpr const char* kNames[6] = {"postselection", "normalization", "sigmoid",
                                            "mean_filter",   "normalization", "sigmoid"};
  for (int s = 0; s < 6; ++s) {
    report.steps[s] = {s, kNames[s], *maps[s], compare_lenient(*maps[s], reference)};
  }
  return report;
}

nlohmann::json to_json(const PipelineReport& report) {
  const auto triple = [](const MetricsReport& m) {
    return nlohmann::json{{"snr_db", m.snr}, {"l1", m.l1}, {"pearson", m.pearson}};
  };
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : report.steps) {
    nlohmann::json j = triple(s.metrics);
    j["step"] = s.index;
    j["name"] = s.name;
    steps.push_back(std::move(j));
  }
  nlohmann::json discard = nlohmann::json::array();
  const auto& d = report.discard_fraction;
  double total = 0.0;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < d.cols(); ++j) {
      row.push_back(d.at(i, j));
      total += d.at(i, j);
    }
    discard.push_back(std::move(row));
  }
  return {{"raw", triple(report.raw_metrics)},
          {"steps", std::move(steps)},
          {"sigmoid", {{"a", report.sigmoid.a}, {"b", report.sigmoid.b}}},
          {"f_max", report.f_max},
          {"discard_fraction_mean", total / static_cast<double>(d.size())},
          {"discard_fraction", std::move(discard)}};
}

}  // namespace qpeclass
