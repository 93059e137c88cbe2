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

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "memword/cli.hpp"

namespace {

using nlohmann::json;

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  json doc;
  in >> doc;
  if (!doc.is_object()) throw std::runtime_error("config must be an object");
  return doc;
}

// Flags beat config-file values; the config only fills in what the command
// line left at its default.
template <typename T>
void maybe(const json& cfg, const CLI::App& app, const std::string& flag,
           const std::string& key, T& value) {
  if (!cfg.contains(key)) return;
  const CLI::Option* opt = app.get_option_no_throw("--" + flag);
  if (opt != nullptr && opt->count() > 0) return;
  value = cfg.at(key).get<T>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"order estimation from a single sample path"};
  app.require_subcommand(1);

  memword::cli::SimulateConfig sim;
  memword::cli::EstimateConfig est;
  memword::cli::AdversaryConfig adv;
  memword::cli::OracleConfig orc;
  memword::cli::BoundConfig bnd;
  std::string config_path;

  CLI::App* sim_cmd = app.add_subcommand("simulate", "sample a process to a file");
  sim_cmd->add_option("--config", config_path, "JSON config file");
  sim_cmd->add_option("--process", sim.process,
                      "chain | ryabko | ryabko-mod | ryabko-folded");
  sim_cmd->add_option("--chain", sim.chain_path, "chain spec (JSON)");
  sim_cmd->add_option("--length", sim.length, "sample length");
  sim_cmd->add_option("--seed", sim.seeds, "seed")->delimiter(',');
  sim_cmd->add_option("--seeds", sim.seeds, "seed list")->delimiter(',');
  sim_cmd->add_option("--mod", sim.modulus, "modulus for ryabko-mod");
  sim_cmd->add_option("--stages", sim.stages, "stages for ryabko-folded");
  sim_cmd->add_option("--output", sim.output, "output file ({seed} for lists)");
  sim_cmd->add_flag("--report", sim.report, "print chain ground truth");

  CLI::App* est_cmd = app.add_subcommand("estimate", "order estimates over checkpoints");
  est_cmd->add_option("--config", config_path, "JSON config file");
  est_cmd->add_option("--input", est.input, "sequence file");
  est_cmd->add_option("--gamma", est.gamma, "support exponent");
  est_cmd->add_option("--beta", est.beta, "acceptance exponent");
  est_cmd->add_option("--checkpoints", est.checkpoints, "horizons")->delimiter(',');
  est_cmd->add_option("--ratio", est.ratio, "geometric checkpoint ratio");
  est_cmd->add_option("--estimator", est.estimator, "order | shortest-word");
  est_cmd->add_option("--output", est.output, "CSV output");

  CLI::App* adv_cmd = app.add_subcommand("adversary", "stagewise fooling construction");
  adv_cmd->add_option("--config", config_path, "JSON config file");
  adv_cmd->add_option("--stages", adv.stages, "stage count J");
  adv_cmd->add_option("--replicates", adv.replicates, "accepted windows per test");
  adv_cmd->add_option("--margin", adv.margin, "confidence margin");
  adv_cmd->add_option("--seed", adv.seed, "master seed");
  adv_cmd->add_option("--horizon-cap", adv.horizon_cap, "search cap");
  adv_cmd->add_option("--gamma", adv.gamma, "plug-in support exponent");
  adv_cmd->add_option("--beta", adv.beta, "plug-in acceptance exponent");
  adv_cmd->add_option("--plugin", adv.plugin, "shortest-word | order");
  adv_cmd->add_option("--output", adv.output, "stage plan JSON");
  adv_cmd->add_option("--csv", adv.csv, "per-stage CSV");

  CLI::App* orc_cmd = app.add_subcommand("oracle", "exact chain ground truth");
  orc_cmd->add_option("--config", config_path, "JSON config file");
  orc_cmd->add_option("--chain", orc.chain_path, "chain spec (JSON)");
  orc_cmd->add_option("--seq", orc.seq_path, "classify this path's memory suffix");
  orc_cmd->add_option("--output", orc.output, "JSON output");

  CLI::App* bnd_cmd = app.add_subcommand("bound", "probability bound tables");
  bnd_cmd->add_option("--config", config_path, "JSON config file");
  bnd_cmd->add_option("--kind", bnd.kind, "order | hoeffding");
  bnd_cmd->add_option("--n", bnd.ns, "horizons")->delimiter(',');
  bnd_cmd->add_option("--gamma", bnd.gamma, "support exponent");
  bnd_cmd->add_option("--beta", bnd.beta, "acceptance exponent");
  bnd_cmd->add_option("--width", bnd.width, "shared range width");
  bnd_cmd->add_option("--eps", bnd.epsilon, "deviation");
  bnd_cmd->add_option("--output", bnd.output, "CSV output");

  CLI11_PARSE(app, argc, argv);

  try {
    const json cfg = load_config(config_path);
    if (sim_cmd->parsed()) {
      maybe(cfg, *sim_cmd, "process", "process", sim.process);
      maybe(cfg, *sim_cmd, "chain", "chain", sim.chain_path);
      maybe(cfg, *sim_cmd, "length", "length", sim.length);
      maybe(cfg, *sim_cmd, "seeds", "seeds", sim.seeds);
      maybe(cfg, *sim_cmd, "mod", "mod", sim.modulus);
      maybe(cfg, *sim_cmd, "stages", "stages", sim.stages);
      maybe(cfg, *sim_cmd, "output", "output", sim.output);
      return memword::cli::run_simulate(sim, std::cout);
    }
    if (est_cmd->parsed()) {
      maybe(cfg, *est_cmd, "input", "input", est.input);
      maybe(cfg, *est_cmd, "gamma", "gamma", est.gamma);
      maybe(cfg, *est_cmd, "beta", "beta", est.beta);
      maybe(cfg, *est_cmd, "checkpoints", "checkpoints", est.checkpoints);
      maybe(cfg, *est_cmd, "ratio", "ratio", est.ratio);
      maybe(cfg, *est_cmd, "estimator", "estimator", est.estimator);
      maybe(cfg, *est_cmd, "output", "output", est.output);
      return memword::cli::run_estimate(est, std::cout);
    }
    if (adv_cmd->parsed()) {
      maybe(cfg, *adv_cmd, "stages", "stages", adv.stages);
      maybe(cfg, *adv_cmd, "replicates", "replicates", adv.replicates);
      maybe(cfg, *adv_cmd, "margin", "margin", adv.margin);
      maybe(cfg, *adv_cmd, "seed", "seed", adv.seed);
      maybe(cfg, *adv_cmd, "horizon-cap", "horizon_cap", adv.horizon_cap);
      maybe(cfg, *adv_cmd, "gamma", "gamma", adv.gamma);
      maybe(cfg, *adv_cmd, "beta", "beta", adv.beta);
      maybe(cfg, *adv_cmd, "plugin", "plugin", adv.plugin);
      maybe(cfg, *adv_cmd, "output", "output", adv.output);
      maybe(cfg, *adv_cmd, "csv", "csv", adv.csv);
      return memword::cli::run_adversary(adv, std::cout);
    }
    if (orc_cmd->parsed()) {
      maybe(cfg, *orc_cmd, "chain", "chain", orc.chain_path);
      maybe(cfg, *orc_cmd, "seq", "seq", orc.seq_path);
      maybe(cfg, *orc_cmd, "output", "output", orc.output);
      return memword::cli::run_oracle(orc, std::cout);
    }
    if (bnd_cmd->parsed()) {
      maybe(cfg, *bnd_cmd, "kind", "kind", bnd.kind);
      maybe(cfg, *bnd_cmd, "n", "n", bnd.ns);
      maybe(cfg, *bnd_cmd, "gamma", "gamma", bnd.gamma);
      maybe(cfg, *bnd_cmd, "beta", "beta", bnd.beta);
      maybe(cfg, *bnd_cmd, "width", "width", bnd.width);
      maybe(cfg, *bnd_cmd, "eps", "eps", bnd.epsilon);
      maybe(cfg, *bnd_cmd, "output", "output", bnd.output);
      return memword::cli::run_bound(bnd, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
