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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

// Batch front end. Every command is a pure function of its config: seeds are
// explicit inputs, so identical configs produce byte-identical output files.

namespace memword::cli {

/// Locale-independent shortest round-trip formatting.
std::string fmt_double(double v);

struct SimulateConfig {
  std::string process = "chain";  // chain | ryabko | ryabko-mod | ryabko-folded
  std::string chain_path;
  std::uint64_t length = 0;
  std::vector<std::uint64_t> seeds = {1};
  std::uint32_t modulus = 3;  // for ryabko-mod
  int stages = 3;             // for ryabko-folded
  std::string output;         // multiple seeds need a {seed} placeholder
  bool report = false;        // print ground-truth classification for chains
};
int run_simulate(const SimulateConfig& cfg, std::ostream& log);

struct EstimateConfig {
  std::string input;
  double gamma = 0.5;
  double beta = 0.2;
  std::vector<std::int64_t> checkpoints;  // empty: geometric schedule
  double ratio = 1.5;
  std::string estimator = "order";  // order | shortest-word
  std::string output;               // CSV path; empty prints to log
};
int run_estimate(const EstimateConfig& cfg, std::ostream& log);

struct AdversaryConfig {
  int stages = 2;
  std::int64_t replicates = 200;
  double margin = 0.05;
  std::uint64_t seed = 1;
  std::uint64_t horizon_cap = 1u << 20;
  double gamma = 0.5;
  double beta = 0.2;
  std::string plugin = "shortest-word";  // shortest-word | order
  std::string output;                    // stage plan JSON
  std::string csv;                       // per-stage table
};
int run_adversary(const AdversaryConfig& cfg, std::ostream& log);

struct OracleConfig {
  std::string chain_path;
  std::string seq_path;  // optional: classify the path's memory suffix
  std::string output;    // JSON; empty prints to log
};
int run_oracle(const OracleConfig& cfg, std::ostream& log);

struct BoundConfig {
  std::string kind = "order";  // order | hoeffding
  std::vector<std::int64_t> ns;
  double gamma = 0.5;
  double beta = 0.2;
  double width = 1.0;    // shared range width for hoeffding
  double epsilon = 0.0;  // deviation for hoeffding
  std::string output;    // CSV; empty prints to log
};
int run_bound(const BoundConfig& cfg, std::ostream& log);

}  // namespace memword::cli
