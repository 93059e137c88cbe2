// Copyright 2026 the memword authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "memword/cli.hpp"
#include "memword/seq.hpp"

using namespace memword;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / "memword_cli_test";
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  out << body;
}

const char* kOrder1Spec = R"({
  "order": 1,
  "alphabet": 2,
  "kernel": {"0": [0.9, 0.1], "1": [0.2, 0.8]}
})";

}  // namespace

TEST_CASE("simulate writes sequences and reports chain ground truth") {
  TempDir dir;
  write(dir.file("chain.json"), kOrder1Spec);

  cli::SimulateConfig cfg;
  cfg.process = "chain";
  cfg.chain_path = dir.file("chain.json");
  cfg.length = 1000;
  cfg.seeds = {5};
  cfg.output = dir.file("seq.txt");
  cfg.report = true;
  std::ostringstream log;
  CHECK(cli::run_simulate(cfg, log) == 0);
  CHECK(read_sequence_file(dir.file("seq.txt")).symbols.size() == 1000);
  CHECK(log.str().find("longest minimal length: 1") != std::string::npos);

  cfg.length = 0;
  cfg.report = false;
  cfg.output = dir.file("empty.txt");
  CHECK(cli::run_simulate(cfg, log) == 0);
  CHECK(read_sequence_file(dir.file("empty.txt")).symbols.empty());

  cfg.process = "ryabko";
  cfg.length = 64;
  cfg.seeds = {1, 2};
  cfg.output = dir.file("r_{seed}.txt");
  CHECK(cli::run_simulate(cfg, log) == 0);
  CHECK(fs::exists(dir.file("r_1.txt")));
  CHECK(fs::exists(dir.file("r_2.txt")));

  cfg.output = dir.file("no_placeholder.txt");
  CHECK_THROWS_AS(cli::run_simulate(cfg, log), std::invalid_argument);
}

TEST_CASE("estimate emits one checkpoint per row") {
  TempDir dir;
  std::ostringstream alt;
  for (int i = 0; i < 100; ++i) alt << (i % 2) << "\n";
  write(dir.file("alt.txt"), alt.str());

  cli::EstimateConfig cfg;
  cfg.input = dir.file("alt.txt");
  cfg.checkpoints = {9, 99};
  cfg.output = dir.file("out.csv");
  std::ostringstream log;
  CHECK(cli::run_estimate(cfg, log) == 0);
  const std::string csv = slurp(dir.file("out.csv"));
  CHECK(csv.find("n,chi,delta_0") == 0);
  CHECK(csv.find("\n9,0,") != std::string::npos);
  CHECK(csv.find("\n99,1,") != std::string::npos);

  cfg.checkpoints = {120};
  CHECK_THROWS_AS(cli::run_estimate(cfg, log), std::invalid_argument);

  // single checkpoint at horizon 0
  std::ostringstream one;
  one << "4\n";
  write(dir.file("one.txt"), one.str());
  cfg.input = dir.file("one.txt");
  cfg.checkpoints = {0};
  cfg.output = dir.file("one.csv");
  CHECK(cli::run_estimate(cfg, log) == 0);
  CHECK(slurp(dir.file("one.csv")).find("\n0,0") != std::string::npos);
}

TEST_CASE("bound tables") {
  TempDir dir;
  cli::BoundConfig cfg;
  cfg.kind = "order";
  cfg.ns = {10};
  cfg.output = dir.file("b.csv");
  std::ostringstream log;
  CHECK(cli::run_bound(cfg, log) == 0);
  const std::string csv = slurp(dir.file("b.csv"));
  CHECK(csv.find("n,bound,clamped") == 0);
  CHECK(csv.find(",1\n") != std::string::npos);  // clamped at small n

  cfg.kind = "hoeffding";
  cfg.ns = {100};
  cfg.width = 1.0;
  cfg.epsilon = 0.1;
  cfg.output = "";
  std::ostringstream table;
  CHECK(cli::run_bound(cfg, table) == 0);
  CHECK(table.str().find("0.27067") != std::string::npos);

  cfg.epsilon = 0.0;
  CHECK_THROWS(cli::run_bound(cfg, log));
}

TEST_CASE("oracle report") {
  TempDir dir;
  write(dir.file("chain.json"), kOrder1Spec);
  cli::OracleConfig cfg;
  cfg.chain_path = dir.file("chain.json");
  std::ostringstream log;
  CHECK(cli::run_oracle(cfg, log) == 0);
  CHECK(log.str().find("\"longest_minimal_length\": 1") != std::string::npos);
  CHECK(log.str().find("\"discrepancies\"") != std::string::npos);
}

TEST_CASE("identical configs produce byte-identical outputs") {
  TempDir dir;
  write(dir.file("chain.json"), kOrder1Spec);

  cli::SimulateConfig sim;
  sim.process = "chain";
  sim.chain_path = dir.file("chain.json");
  sim.length = 5000;
  sim.seeds = {7};
  std::ostringstream log;

  sim.output = dir.file("a.txt");
  cli::run_simulate(sim, log);
  sim.output = dir.file("b.txt");
  cli::run_simulate(sim, log);
  CHECK(slurp(dir.file("a.txt")) == slurp(dir.file("b.txt")));

  cli::EstimateConfig est;
  est.input = dir.file("a.txt");
  est.output = dir.file("a.csv");
  cli::run_estimate(est, log);
  est.output = dir.file("b.csv");
  cli::run_estimate(est, log);
  CHECK(slurp(dir.file("a.csv")) == slurp(dir.file("b.csv")));
}
