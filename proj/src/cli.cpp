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

#include "qpeclass/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qpeclass/metrics.hpp"
#include "qpeclass/mitigation.hpp"
#include "qpeclass/noise.hpp"
#include "qpeclass/training.hpp"

#ifndef QPECLASS_VERSION
#define QPECLASS_VERSION "0.0.0"
#endif

namespace qpeclass::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double to_double(std::string_view s) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return v;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("error writing " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string map_text(const ProbabilityMap& m, const fs::path& path) {
  std::ostringstream s;
  if (path.extension() == ".json") {
    s << to_json(m).dump(1) << '\n';
  } else {
    write_map_csv(s, m);
  }
  return s.str();
}

std::string pgm_text(const ProbabilityMap& m) {
  std::ostringstream s;
  write_pgm(s, m);
  return s.str();
}

// Options shared by the map, train and classify commands.
struct SourceOptions {
  std::string source = "analytic";
  std::optional<std::uint64_t> shots;
  std::string noise = "default";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> layout;
  unsigned threads = 0;

  void add_to(CLI::App* app) {
    app->add_option("--source", source, "analytic | sim | noisy")
        ->check(CLI::IsMember({"analytic", "sim", "simulator", "noisy"}));
    app->add_option("--shots", shots,
                    "shots per grid point (sim: default 0 = exact; noisy: default 8192)");
    app->add_option("--noise", noise, "noise config JSON path, or zero | default | nominal");
    app->add_option("--seed", seed, "seed for every random stream");
    app->add_option("--layout", layout, "toy | hardware (overrides the noise config)");
    app->add_option("--threads", threads, "worker threads (0 = all cores)");
  }

  NoiseConfig noise_config() const {
    NoiseConfig cfg;
    if (noise == "zero") {
      cfg = NoiseConfig::zero();
    } else if (noise == "nominal") {
      cfg = NoiseConfig::nominal();
    } else if (noise != "default") {
      cfg = noise_from_json(json::parse(read_text(noise)));
    }
    if (seed) cfg.seed = *seed;
    if (layout) cfg.layout = parse_layout(*layout);
    return cfg;
  }

  Source resolve(std::uint64_t sampled_default) const {
    const NoiseConfig cfg = noise_config();
    Source s;
    switch (parse_source_kind(source)) {
      case Source::Kind::Analytic:
        s = Source::analytic();
        break;
      case Source::Kind::Simulator:
        s = Source::simulator(shots.value_or(0), cfg.layout, cfg.seed);
        break;
      case Source::Kind::Noisy:
        s = Source::noisy(cfg, shots.value_or(sampled_default));
        break;
    }
    s.threads = threads;
    return s;
  }
};

// Accepts both "custom:a,b,c,d" and "custom a,b,c,d".
void add_state_option(CLI::App* app, std::string& target, const std::string& help) {
  app->add_option_function<std::vector<std::string>>(
         "--state",
         [&target](const std::vector<std::string>& parts) {
           target.clear();
           for (const auto& p : parts) target += (target.empty() ? "" : " ") + p;
         },
         help)
      ->expected(1, 2)
      ->required();
}

json source_json(const Source& s) {
  json j{{"kind", std::string(to_string(s.kind))}, {"shots", s.shots}};
  if (s.kind != Source::Kind::Analytic) j["noise"] = to_json(s.noise);
  return j;
}

void write_manifest(const std::string& output, const std::string& command,
                    const std::vector<std::string>& args, const json& parameters,
                    std::uint64_t seed, const std::vector<std::string>& outputs) {
  const json manifest{{"command", command},
                      {"argv", std::vector<std::string>(args.begin() + 1, args.end())},
                      {"parameters", parameters},
                      {"seed", seed},
                      {"version", std::string(version())},
                      {"outputs", outputs}};
  write_text(manifest_path_for(output), manifest.dump(2) + "\n");
}

struct MapOptions {
  std::string state;
  std::string grid = "-2,0.1,40";
  std::string out;
  std::string pgm;
  std::string counts_out;
};

struct TrainOptions {
  std::string grid = "-2,0.1,40";
  std::optional<double> tol;
  std::string out;
};

struct ClassifyOptions {
  std::string state;
  std::string omega;
  std::string out;
};

struct MitigateOptions {
  std::string counts;
  std::string cls;
  std::string reference;
  int window = kDefaultWindow;
  std::optional<double> steepness;
  std::string out;
  std::string maps_dir;
};

struct MetricsOptions {
  std::string a;
  std::string b;
  std::string out;
};

int cmd_map(const MapOptions& o, const SourceOptions& so, const std::vector<std::string>& args,
            std::ostream& out) {
  const TwoQubitState state = parse_state(o.state);
  const GridSpec grid = parse_grid(o.grid);
  const Source source = so.resolve(8192);
  const bool sampled = source.kind != Source::Kind::Analytic && source.shots > 0;
  if (!o.counts_out.empty() && !sampled) {
    throw std::invalid_argument("--counts-out needs a sampled source (sim or noisy with shots)");
  }

  ProbabilityMap map;
  std::optional<CountsGrid> counts;
  if (sampled) {
    const NoiseConfig cfg = source.kind == Source::Kind::Noisy
                                ? source.noise
                                : NoiseConfig::zero(source.noise.layout, source.noise.seed);
    NoisyMapResult r = noisy_map(state.to_state_vector(), grid, source.shots, cfg,
                                 !o.counts_out.empty(), source.threads);
    map = std::move(r.map);
    if (!o.counts_out.empty()) counts = CountsGrid{grid, std::move(r.counts)};
  } else {
    map = map_from_source(state, grid, source);
  }

  std::vector<std::string> outputs{o.out};
  write_text(o.out, map_text(map, o.out));
  if (!o.pgm.empty()) {
    write_text(o.pgm, pgm_text(map));
    outputs.push_back(o.pgm);
  }
  if (counts) {
    std::ostringstream s;
    write_counts_csv(s, *counts);
    write_text(o.counts_out, s.str());
    outputs.push_back(o.counts_out);
  }
  const json p{{"state", o.state},
               {"grid",
                {{"omega1_start", grid.start1}, {"omega1_step", grid.step1}, {"n1", grid.n1},
                 {"omega2_start", grid.start2}, {"omega2_step", grid.step2}, {"n2", grid.n2}}},
               {"source", source_json(source)}};
  write_manifest(o.out, "map", args, p, source.noise.seed, outputs);
  out << json{{"map", o.out}, {"min", map.min()}, {"max", map.max()}}.dump() << '\n';
  return 0;
}

int cmd_train(const TrainOptions& o, const SourceOptions& so, const std::vector<std::string>& args,
              std::ostream& out) {
  const GridSpec grid = parse_grid(o.grid);
  const Source source = so.resolve(8192);
  const bool sampled = source.kind != Source::Kind::Analytic && source.shots > 0;
  const double tol = o.tol.value_or(sampled ? default_sampling_tol(source.shots) : kEigenTolerance);
  const TrainingResult result = train_grid(bell_training_set(), grid, source, tol);
  json j = to_json(result);
  j["source"] = source_json(source);
  write_text(o.out, j.dump(2) + "\n");
  write_manifest(o.out, "train", args, {{"grid", o.grid}, {"tol", tol}, {"source", source_json(source)}},
                 source.noise.seed, {o.out});
  out << json{{"result", o.out}, {"points", result.points.size()}}.dump() << '\n';
  return 0;
}

int cmd_classify(const ClassifyOptions& o, const SourceOptions& so,
                 const std::vector<std::string>& args, std::ostream& out) {
  const TwoQubitState state = parse_state(o.state);
  const OmegaPoint omega = parse_omega(o.omega);
  const Source source = so.resolve(8192);
  const json j = to_json(classify(state, omega, source));
  out << j.dump() << '\n';
  if (!o.out.empty()) {
    write_text(o.out, j.dump(2) + "\n");
    write_manifest(o.out, "classify", args,
                   {{"state", o.state}, {"omega", {omega.omega1, omega.omega2}},
                    {"source", source_json(source)}},
                   source.noise.seed, {o.out});
  }
  return 0;
}

int cmd_mitigate(const MitigateOptions& o, const std::vector<std::string>& args,
                 std::ostream& out) {
  const auto cls = parse_bell_class(o.cls);
  if (!cls) throw std::invalid_argument("--class must be phi or psi");
  const ProbabilityMap reference = load_map(o.reference);
  std::istringstream counts_in(read_text(o.counts));
  const CountsGrid counts = read_counts_csv(counts_in, reference.grid());
  const PipelineReport report =
      run_pipeline(counts, *cls, reference, PipelineOptions{o.window, o.steepness});

  std::vector<std::string> outputs{o.out};
  write_text(o.out, to_json(report).dump(2) + "\n");
  if (!o.maps_dir.empty()) {
    const fs::path dir(o.maps_dir);
    const auto emit = [&](const std::string& name, const ProbabilityMap& m) {
      const fs::path p = dir / name;
      write_text(p, map_text(m, p));
      outputs.push_back(p.string());
    };
    emit("raw.csv", report.raw_map);
    for (const auto& s : report.steps) {
      emit("step" + std::to_string(s.index) + "_" + s.name + ".csv", s.map);
    }
    emit("discard_fraction.csv", report.discard_fraction);
  }
  write_manifest(o.out, "mitigate", args,
                 {{"counts", o.counts}, {"class", std::string(to_string(*cls))},
                  {"reference", o.reference}, {"window", o.window},
                  {"steepness", o.steepness ? json(*o.steepness) : json(nullptr)}},
                 0, outputs);
  const auto& last = report.steps.back().metrics;
  out << json{{"report", o.out}, {"final", {{"snr_db", last.snr}, {"l1", last.l1},
                                            {"pearson", last.pearson}}}}
             .dump()
      << '\n';
  return 0;
}

int cmd_metrics(const MetricsOptions& o, const std::vector<std::string>& args, std::ostream& out) {
  const json j = metrics_json(load_map(o.a), load_map(o.b));
  out << j.dump() << '\n';
  if (!o.out.empty()) {
    write_text(o.out, j.dump(2) + "\n");
    write_manifest(o.out, "metrics", args, {{"a", o.a}, {"b", o.b}}, 0, {o.out});
  }
  return 0;
}

}  // namespace

std::string_view version() { return QPECLASS_VERSION; }

std::string manifest_path_for(const std::string& output) { return output + ".manifest.json"; }

Complex parse_complex(std::string_view text) {
  std::string s;
  for (const char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("empty amplitude");
  const char last = s.back();
  if (last != 'i' && last != 'j') return {to_double(s), 0.0};
  s.pop_back();
  // Split "re±im" at the last sign that is not an exponent sign or leading.
  std::size_t split_at = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  const auto imag_of = [](std::string im) {
    if (im.empty() || im == "+") return 1.0;
    if (im == "-") return -1.0;
    return to_double(im);
  };
  if (split_at == std::string::npos) return {0.0, imag_of(s)};
  return {to_double(s.substr(0, split_at)), imag_of(s.substr(split_at))};
}

TwoQubitState parse_state(const std::string& spec) {
  if (const auto label = parse_bell_label(spec)) return bell_amplitudes(*label);
  std::string body;
  if (spec.rfind("custom:", 0) == 0) {
    body = spec.substr(7);
  } else if (spec.rfind("custom ", 0) == 0) {
    body = spec.substr(7);
  } else {
    throw std::invalid_argument("state must be phi+, phi-, psi+, psi- or custom:a,b,c,d");
  }
  const auto parts = split(body, ',');
  if (parts.size() != 4) throw std::invalid_argument("custom state needs four amplitudes");
  Amplitudes amps;
  for (const auto& p : parts) amps.push_back(parse_complex(p));
  double norm = 0.0;
  for (const auto& a : amps) norm += std::norm(a);
  if (std::abs(norm - 1.0) > 1e-6) {
    throw std::invalid_argument("custom state is not normalized (|ψ|² = " + std::to_string(norm) +
                                ")");
  }
  const double scale = 1.0 / std::sqrt(norm);
  return {amps[0] * scale, amps[1] * scale, amps[2] * scale, amps[3] * scale};
}

GridSpec parse_grid(const std::string& text) {
  const auto parts = split(text, ',');
  GridSpec g;
  const auto count = [](const std::string& s) {
    const double v = to_double(s);
    if (v < 1 || v != std::floor(v)) throw std::invalid_argument("grid size must be a positive integer");
    return static_cast<std::size_t>(v);
  };
  if (parts.size() == 3) {
    g.start1 = g.start2 = to_double(parts[0]);
    g.step1 = g.step2 = to_double(parts[1]);
    g.n1 = g.n2 = count(parts[2]);
  } else if (parts.size() == 6) {
    g.start1 = to_double(parts[0]);
    g.step1 = to_double(parts[1]);
    g.n1 = count(parts[2]);
    g.start2 = to_double(parts[3]);
    g.step2 = to_double(parts[4]);
    g.n2 = count(parts[5]);
  } else {
    throw std::invalid_argument("grid must be start,step,n or six values");
  }
  g.validate();
  return g;
}

OmegaPoint parse_omega(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw std::invalid_argument("omega must be w1,w2");
  return {to_double(parts[0]), to_double(parts[1])};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase-estimation classifier toolkit", "qpeclass"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));

  SourceOptions map_src, train_src, classify_src;
  MapOptions map_opts;
  TrainOptions train_opts;
  ClassifyOptions classify_opts;
  MitigateOptions mitigate_opts;
  MetricsOptions metrics_opts;
  std::string manifest;

  auto* map = app.add_subcommand("map", "compute a P0 map over the (omega1, omega2) grid");
  add_state_option(map, map_opts.state, "phi+ | phi- | psi+ | psi- | custom:a,b,c,d");
  map->add_option("--grid", map_opts.grid, "start,step,n or start1,step1,n1,start2,step2,n2");
  map->add_option("--out", map_opts.out, "output map (.csv or .json)")->required();
  map->add_option("--png-pgm", map_opts.pgm, "optional PGM heatmap");
  map->add_option("--counts-out", map_opts.counts_out,
                  "raw counts CSV (measures the data qubits too)");
  map_src.add_to(map);

  auto* train = app.add_subcommand("train", "grid-search the deterministic classification points");
  train->add_option("--grid", train_opts.grid, "grid spec");
  train->add_option("--tol", train_opts.tol, "distance from 0/1 accepted as exact");
  train->add_option("--out", train_opts.out, "result JSON")->required();
  train_src.add_to(train);

  auto* cls = app.add_subcommand("classify", "estimate P0 and the class label at one point");
  add_state_option(cls, classify_opts.state, "input state");
  cls->add_option("--omega", classify_opts.omega, "w1,w2")->required();
  cls->add_option("--out", classify_opts.out, "optional JSON output file");
  classify_src.add_to(cls);

  auto* mit = app.add_subcommand("mitigate", "run the six-step post-processing pipeline");
  mit->add_option("--counts", mitigate_opts.counts, "raw counts CSV")->required();
  mit->add_option("--class", mitigate_opts.cls, "phi | psi")->required();
  mit->add_option("--reference", mitigate_opts.reference, "reference map")->required();
  mit->add_option("--window", mitigate_opts.window, "odd window size");
  mit->add_option("--steepness", mitigate_opts.steepness, "fixed sigmoid steepness a");
  mit->add_option("--out", mitigate_opts.out, "report JSON")->required();
  mit->add_option("--maps-dir", mitigate_opts.maps_dir, "directory for per-step maps");

  auto* met = app.add_subcommand("metrics", "compare two maps");
  met->add_option("--a", metrics_opts.a, "measured map")->required();
  met->add_option("--b", metrics_opts.b, "reference map")->required();
  met->add_option("--out", metrics_opts.out, "optional JSON output file");

  auto* rerun = app.add_subcommand("rerun", "re-execute a run manifest");
  rerun->add_option("manifest", manifest, "manifest JSON")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << version() << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << json{{"error", e.what()}}.dump() << '\n';
    return 2;
  }

  try {
    if (*map) return cmd_map(map_opts, map_src, args, out);
    if (*train) return cmd_train(train_opts, train_src, args, out);
    if (*cls) return cmd_classify(classify_opts, classify_src, args, out);
    if (*mit) return cmd_mitigate(mitigate_opts, args, out);
    if (*met) return cmd_metrics(metrics_opts, args, out);
    if (*rerun) {
      const json m = json::parse(read_text(manifest));
      std::vector<std::string> replay{args.front()};
      for (const auto& a : m.at("argv")) replay.push_back(a.get<std::string>());
      if (replay.size() < 2 || replay[1] == "rerun") {
        throw std::invalid_argument("manifest does not describe a runnable command");
      }
      return run(replay, out, err);
    }
  } catch (const std::exception& e) {
    err << json{{"error", e.what()}}.dump() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace qpeclass::cli
