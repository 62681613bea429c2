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
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qpeclass/cli.hpp"
#include "qpeclass/metrics.hpp"
#include "qpeclass/mitigation.hpp"
#include "qpeclass/training.hpp"

namespace qpeclass {
namespace {

namespace fs = std::filesystem;

ProbabilityMap random_map(std::mt19937_64& rng, const GridSpec& g) {
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> v(g.size());
  for (auto& x : v) x = u(rng);
  return ProbabilityMap(g, std::move(v));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qpeclass_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "qpeclass");
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST(MapCsv, RoundTripIsExact) {
  std::mt19937_64 rng(1);
  const GridSpec g{-2.0, 0.1, 7, 0.5, 0.25, 5};
  const ProbabilityMap m = random_map(rng, g);
  std::stringstream s;
  write_map_csv(s, m);
  EXPECT_EQ(s.str().substr(0, s.str().find('\n')), grid_header(g));
  EXPECT_EQ(read_map_csv(s), m);
  EXPECT_EQ(map_from_json(to_json(m)), m);
  EXPECT_EQ(parse_grid_header(grid_header(g)), g);
}

TEST(MapCsv, RejectsMalformed) {
  std::istringstream no_header("0.1,0.2\n");
  EXPECT_THROW(read_map_csv(no_header), std::invalid_argument);
  std::istringstream short_row(
      "# omega1_start=0 omega1_step=1 n1=2 omega2_start=0 omega2_step=1 n2=2\n0.1,0.2\n0.3\n");
  EXPECT_THROW(read_map_csv(short_row), std::invalid_argument);
  std::istringstream bad_num(
      "# omega1_start=0 omega1_step=1 n1=1 omega2_start=0 omega2_step=1 n2=1\nabc\n");
  EXPECT_THROW(read_map_csv(bad_num), std::invalid_argument);
}

TEST(Pgm, MonotoneGrayLevels) {
  const GridSpec g{0.0, 1.0, 1, 0.0, 1.0, 101};
  std::vector<double> v(101);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = static_cast<double>(k) / 100.0;
  std::stringstream s;
  write_pgm(s, ProbabilityMap(g, v));
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  s >> magic >> w >> h >> maxval;
  EXPECT_EQ(magic, "P2");
  EXPECT_EQ(w, 101);
  EXPECT_EQ(h, 1);
  EXPECT_EQ(maxval, 255);
  int prev = -1;
  for (int k = 0; k < 101; ++k) {
    int level = 0;
    s >> level;
    EXPECT_GE(level, prev);
    prev = level;
  }
  EXPECT_EQ(prev, 255);
}

TEST(CliParse, States) {
  const TwoQubitState phi = cli::parse_state("phi-");
  EXPECT_NEAR(std::abs(phi.delta + 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  const TwoQubitState c = cli::parse_state("custom:0.5,0.5,0.5,0.5");
  EXPECT_EQ(c.beta, Complex(0.5, 0.0));
  const TwoQubitState z = cli::parse_state("custom 0.6i,0,0,-0.8");
  EXPECT_EQ(z.alpha, Complex(0.0, 0.6));
  EXPECT_THROW(cli::parse_state("custom:1,1,0,0"), std::invalid_argument);
  EXPECT_THROW(cli::parse_state("custom:1,0,0"), std::invalid_argument);
  EXPECT_THROW(cli::parse_state("bell"), std::invalid_argument);
  EXPECT_EQ(cli::parse_complex("0.5-0.25i"), Complex(0.5, -0.25));
  EXPECT_EQ(cli::parse_complex("-i"), Complex(0.0, -1.0));
  EXPECT_EQ(cli::parse_complex("1e-3+2e-3j"), Complex(1e-3, 2e-3));
}

TEST(CliParse, GridAndOmega) {
  const GridSpec g = cli::parse_grid("-2,0.1,40");
  EXPECT_EQ(g, GridSpec{});
  const GridSpec h = cli::parse_grid("0,0.5,3,-1,0.25,4");
  EXPECT_EQ(h.n1, 3U);
  EXPECT_EQ(h.start2, -1.0);
  EXPECT_THROW(cli::parse_grid("0,0,3"), std::invalid_argument);
  EXPECT_THROW(cli::parse_grid("0,0.1,2.5"), std::invalid_argument);
  EXPECT_THROW(cli::parse_grid("0,0.1"), std::invalid_argument);
  EXPECT_EQ(cli::parse_omega("1,-1"), (OmegaPoint{1.0, -1.0}));
}

TEST_F(TempDir, MapAnalyticMatchesIdeal) {
  ASSERT_EQ(run({"map", "--state", "psi-", "--source", "analytic", "--out", path("m.csv"),
                 "--png-pgm", path("m.pgm")}),
            0)
      << err_.str();
  const ProbabilityMap m = load_map(path("m.csv"));
  EXPECT_EQ(m, ideal_map(bell_amplitudes(BellLabel::PsiMinus), GridSpec{}));
  EXPECT_TRUE(fs::exists(path("m.pgm")));
  EXPECT_TRUE(fs::exists(cli::manifest_path_for(path("m.csv"))));

  ASSERT_EQ(run({"map", "--state", "phi+", "--out", path("p.json")}), 0);
  EXPECT_DOUBLE_EQ(load_map(path("p.json")).at(30, 10), 1.0);
}

TEST_F(TempDir, MapSimulatorWithinThreeSigma) {
  ASSERT_EQ(run({"map", "--state", "psi-", "--source", "sim", "--shots", "8192", "--noise", "zero",
                 "--grid", "-2,0.4,10", "--out", path("s.csv")}),
            0)
      << err_.str();
  const ProbabilityMap s = load_map(path("s.csv"));
  const ProbabilityMap a = ideal_map(bell_amplitudes(BellLabel::PsiMinus), s.grid());
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double p = a.values()[k];
    EXPECT_LE(std::abs(s.values()[k] - p), 3 * std::sqrt(p * (1 - p) / 8192) + 1e-12);
  }
}

TEST_F(TempDir, ErrorsAreJsonLines) {
  EXPECT_NE(run({"map", "--state", "custom:1,1,1,1", "--out", path("x.csv")}), 0);
  const auto j = nlohmann::json::parse(err_.str());
  EXPECT_TRUE(j.contains("error"));
  EXPECT_NE(run({"map", "--state", "phi+", "--grid", "0,0,4", "--out", path("x.csv")}), 0);
  EXPECT_NE(run({"frobnicate"}), 0);
  EXPECT_TRUE(nlohmann::json::parse(err_.str()).contains("error"));
  EXPECT_NE(run({"map", "--state", "phi+", "--out", path("x.csv"), "--counts-out", path("c.csv")}), 0);
}

TEST_F(TempDir, TrainAndClassify) {
  ASSERT_EQ(run({"train", "--source", "analytic", "--out", path("t.json")}), 0) << err_.str();
  const auto t = nlohmann::json::parse(slurp(path("t.json")));
  ASSERT_EQ(t.at("optimal_points").size(), 4U);
  for (const auto& p : t.at("optimal_points")) {
    EXPECT_EQ(std::abs(p.at("omega1").get<double>()), 1.0);
    EXPECT_EQ(std::abs(p.at("omega2").get<double>()), 1.0);
  }

  ASSERT_EQ(run({"classify", "--state", "phi-", "--omega", "1,-1"}), 0);
  auto c = nlohmann::json::parse(out_.str());
  EXPECT_EQ(c.at("p0"), 1.0);
  EXPECT_EQ(c.at("label"), "Phi");
  ASSERT_EQ(run({"classify", "--state", "custom", "0.5,0.5,0.5,0.5", "--omega", "1,-1"}), 0)
      << err_.str();
  c = nlohmann::json::parse(out_.str());
  EXPECT_EQ(c.at("p0"), 0.5);
  EXPECT_EQ(c.at("label"), "ambiguous");
  ASSERT_EQ(run({"classify", "--state", "psi+", "--omega", "1,1"}), 0);
  c = nlohmann::json::parse(out_.str());
  EXPECT_NEAR(c.at("p0").get<double>(), 1.0, 1e-12);
  EXPECT_EQ(c.at("label"), "Psi");
}

TEST_F(TempDir, MitigateAndMetrics) {
  const std::string grid = "-2,0.2,20";
  ASSERT_EQ(run({"map", "--state", "psi-", "--grid", grid, "--out", path("ideal.csv")}), 0);
  ASSERT_EQ(run({"map", "--state", "psi-", "--grid", grid, "--source", "noisy", "--shots", "1024",
                 "--out", path("raw.csv"), "--counts-out", path("counts.csv")}),
            0)
      << err_.str();
  ASSERT_EQ(run({"mitigate", "--counts", path("counts.csv"), "--class", "psi", "--reference",
                 path("ideal.csv"), "--out", path("report.json"), "--maps-dir", path("maps")}),
            0)
      << err_.str();
  const auto report = nlohmann::json::parse(slurp(path("report.json")));
  EXPECT_EQ(report.at("steps").size(), 6U);
  EXPECT_TRUE(fs::exists(dir_ / "maps" / "step5_sigmoid.csv"));

  ASSERT_EQ(run({"metrics", "--a", path("raw.csv"), "--b", path("ideal.csv")}), 0);
  const auto m = nlohmann::json::parse(out_.str());
  const MetricsReport expect = compare(load_map(path("raw.csv")), load_map(path("ideal.csv")));
  EXPECT_DOUBLE_EQ(m.at("snr_db").get<double>(), expect.snr);
  EXPECT_DOUBLE_EQ(m.at("pearson").get<double>(), expect.pearson);

  ASSERT_EQ(run({"metrics", "--a", path("ideal.csv"), "--b", path("ideal.csv")}), 0);
  const auto same = nlohmann::json::parse(out_.str());
  EXPECT_EQ(same.at("l1"), 0.0);
  EXPECT_TRUE(same.at("snr_db").is_null());
}

TEST_F(TempDir, RerunReproducesBytes) {
  ASSERT_EQ(run({"map", "--state", "phi-", "--grid", "-2,0.5,8", "--source", "noisy", "--shots",
                 "256", "--seed", "9", "--out", path("n.csv"), "--counts-out", path("c.csv")}),
            0);
  const std::string map_bytes = slurp(path("n.csv"));
  const std::string counts_bytes = slurp(path("c.csv"));
  const std::string manifest_bytes = slurp(cli::manifest_path_for(path("n.csv")));
  fs::remove(path("n.csv"));
  fs::remove(path("c.csv"));
  ASSERT_EQ(run({"rerun", cli::manifest_path_for(path("n.csv"))}), 0) << err_.str();
  EXPECT_EQ(slurp(path("n.csv")), map_bytes);
  EXPECT_EQ(slurp(path("c.csv")), counts_bytes);
  EXPECT_EQ(slurp(cli::manifest_path_for(path("n.csv"))), manifest_bytes);
  const auto manifest = nlohmann::json::parse(manifest_bytes);
  EXPECT_EQ(manifest.at("seed"), 9);
  EXPECT_EQ(manifest.at("version"), std::string(cli::version()));
}

}  // namespace
}  // namespace qpeclass
