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

#include "memword/cli.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "memword/bounds.hpp"
#include "memword/chain.hpp"
#include "memword/estimator.hpp"
#include "memword/processes.hpp"
#include "memword/seq.hpp"

namespace memword::cli {

std::string fmt_double(double v) {
  char buf[32];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, p);
}

namespace {

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << body;
}

std::string seed_path(const std::string& pattern, std::uint64_t seed,
                      bool multi) {
  const std::string token = "{seed}";
  const auto pos = pattern.find(token);
  if (pos == std::string::npos) {
    if (multi) {
      throw std::invalid_argument(
          "multiple seeds need a {seed} placeholder in --output");
    }
    return pattern;
  }
  std::string out = pattern;
  out.replace(pos, token.size(), std::to_string(seed));
  return out;
}

}  // namespace

int run_simulate(const SimulateConfig& cfg, std::ostream& log) {
  if (cfg.output.empty()) throw std::invalid_argument("simulate needs --output");
  if (cfg.seeds.empty()) throw std::invalid_argument("need at least one seed");
  const bool multi = cfg.seeds.size() > 1;

  std::optional<ExplicitChain> chain;
  if (cfg.process == "chain") {
    if (cfg.chain_path.empty()) {
      throw std::invalid_argument("process 'chain' needs --chain");
    }
    chain.emplace(ExplicitChain::from_json_file(cfg.chain_path));
  }

  for (const std::uint64_t seed : cfg.seeds) {
    Sequence seq;
    if (chain) {
      seq = sample_explicit(*chain, cfg.length, seed);
    } else if (cfg.process == "ryabko") {
      seq = sample_ryabko(cfg.length, seed);
    } else if (cfg.process == "ryabko-mod") {
      seq = sample_ryabko_mod(cfg.length, cfg.modulus, seed);
    } else if (cfg.process == "ryabko-folded") {
      seq = sample_ryabko_folded(cfg.length, cfg.stages, seed);
    } else {
      throw std::invalid_argument("unknown process: " + cfg.process);
    }
    write_sequence_file(seed_path(cfg.output, seed, multi), seq);
  }

  if (chain && cfg.report) {
    const MemoryWordReport report = chain->memory_word_report();
    log << "minimal words:";
    for (const Word& w : report.minimal_words) {
      log << " [" << word_str(w) << "]";
    }
    log << "\nlongest minimal length: " << report.longest_minimal_length
        << "\nshortest memory length: " << report.shortest_memory_length
        << "\n";
  }
  return 0;
}

int run_estimate(const EstimateConfig& cfg, std::ostream& log) {
  if (cfg.input.empty()) throw std::invalid_argument("estimate needs --input");
  const LoadedSequence loaded = read_sequence_file(cfg.input);
  const Sequence& seq = loaded.symbols;
  if (seq.empty()) throw std::invalid_argument("empty sequence file");

  EstimatorParams params(cfg.gamma, cfg.beta);
  std::vector<std::int64_t> checkpoints = cfg.checkpoints;
  if (checkpoints.empty()) {
    checkpoints =
        geometric_checkpoints(static_cast<std::int64_t>(seq.size()) - 1,
                              cfg.ratio);
  }

  struct Row {
    std::int64_t n = 0;
    std::int64_t estimate = 0;
    std::vector<double> deltas;
    std::vector<std::size_t> supports;
  };
  std::vector<Row> rows;
  for (const std::int64_t n : checkpoints) {
    if (n < 0 || n >= static_cast<std::int64_t>(seq.size())) {
      throw std::invalid_argument("checkpoint exceeds the available data");
    }
    const ContextIndex index = build_index(seq, n, params);
    Row row;
    row.n = n;
    if (cfg.estimator == "order") {
      row.estimate = n == 0 ? 0 : order_estimate(index, params);
    } else if (cfg.estimator == "shortest-word") {
      row.estimate = n == 0 ? 0 : shortest_word_estimate(index, params);
    } else {
      throw std::invalid_argument("unknown estimator: " + cfg.estimator);
    }
    for (const DiscrepancyReport& r : discrepancy_profile(index)) {
      row.deltas.push_back(r.value);
    }
    for (std::size_t len = 1; len < index.first_empty_level(); ++len) {
      row.supports.push_back(index.level(len).size());
    }
    rows.push_back(std::move(row));
  }

  std::size_t max_deltas = 0;
  std::size_t max_supports = 0;
  for (const Row& r : rows) {
    max_deltas = std::max(max_deltas, r.deltas.size());
    max_supports = std::max(max_supports, r.supports.size());
  }

  std::ostringstream csv;
  csv << "n," << (cfg.estimator == "order" ? "chi" : "shortest_word");
  for (std::size_t k = 0; k < max_deltas; ++k) csv << ",delta_" << k;
  for (std::size_t k = 0; k < max_supports; ++k) csv << ",support_" << k;
  csv << "\n";
  for (const Row& r : rows) {
    csv << r.n << "," << r.estimate;
    for (std::size_t k = 0; k < max_deltas; ++k) {
      csv << ",";
      if (k < r.deltas.size()) csv << fmt_double(r.deltas[k]);
    }
    for (std::size_t k = 0; k < max_supports; ++k) {
      csv << ",";
      if (k < r.supports.size()) csv << r.supports[k];
    }
    csv << "\n";
  }
  if (cfg.output.empty()) {
    log << csv.str();
  } else {
    write_text_file(cfg.output, csv.str());
  }
  return 0;
}

int run_adversary(const AdversaryConfig& cfg, std::ostream& log) {
  if (cfg.replicates < 1) {
    throw std::invalid_argument(
        "need at least one replicate to estimate probabilities");
  }
  const EstimatorParams params(cfg.gamma, cfg.beta);
  EstimatorPlugin plugin;
  if (cfg.plugin == "shortest-word") {
    plugin = [params](SeqView seq) {
      const std::int64_t n = static_cast<std::int64_t>(seq.size()) - 1;
      if (n < 1) return static_cast<std::int64_t>(0);
      const ContextIndex index = build_index(seq, n, params);
      return shortest_word_estimate(index, params);
    };
  } else if (cfg.plugin == "order") {
    plugin = [params](SeqView seq) {
      const std::int64_t n = static_cast<std::int64_t>(seq.size()) - 1;
      if (n < 1) return static_cast<std::int64_t>(0);
      const ContextIndex index = build_index(seq, n, params);
      return order_estimate(index, params);
    };
  } else {
    throw std::invalid_argument("unknown plug-in: " + cfg.plugin);
  }

  AdversaryOptions options;
  options.stages = cfg.stages;
  options.replicates = cfg.replicates;
  options.margin = cfg.margin;
  options.seed = cfg.seed;
  options.horizon_cap = cfg.horizon_cap;
  const StagePlan plan = build_adversary(plugin, options);

  const std::string json = stage_plan_to_json(plan);
  if (cfg.output.empty()) {
    log << json << "\n";
  } else {
    write_text_file(cfg.output, json);
  }
  if (!cfg.csv.empty()) {
    std::ostringstream csv;
    csv << "stage,band_low,sample_size,horizon,target,success,replicates,"
           "draws\n";
    for (const StageRecord& r : plan.stages) {
      csv << r.stage << "," << r.band_low << "," << r.sample_size << ","
          << r.horizon << "," << fmt_double(r.target) << ","
          << fmt_double(r.success) << "," << r.replicates << "," << r.draws
          << "\n";
    }
    write_text_file(cfg.csv, csv.str());
  }
  if (!plan.completed) {
    log << "adversary search failed: " << plan.failure << "\n";
    return 2;
  }
  return 0;
}

int run_oracle(const OracleConfig& cfg, std::ostream& log) {
  if (cfg.chain_path.empty()) throw std::invalid_argument("oracle needs --chain");
  const ExplicitChain chain = ExplicitChain::from_json_file(cfg.chain_path);

  nlohmann::json doc;
  doc["order"] = chain.order();
  doc["alphabet"] = chain.alphabet();
  doc["stationary"] = chain.stationary();
  const MemoryWordReport report = chain.memory_word_report();
  nlohmann::json words = nlohmann::json::array();
  for (const Word& w : report.minimal_words) words.push_back(word_str(w));
  doc["minimal_words"] = words;
  doc["longest_minimal_length"] = report.longest_minimal_length;
  doc["shortest_memory_length"] = report.shortest_memory_length;
  nlohmann::json deltas = nlohmann::json::array();
  for (std::int64_t k = 0; k <= chain.order(); ++k) {
    deltas.push_back(chain.exact_discrepancy(k));
  }
  doc["discrepancies"] = deltas;
  if (!cfg.seq_path.empty()) {
    const LoadedSequence loaded = read_sequence_file(cfg.seq_path);
    doc["suffix_memory_length"] =
        chain.suffix_memory_length(loaded.symbols);
  }
  const std::string json = doc.dump(2);
  if (cfg.output.empty()) {
    log << json << "\n";
  } else {
    write_text_file(cfg.output, json);
  }
  return 0;
}

int run_bound(const BoundConfig& cfg, std::ostream& log) {
  std::ostringstream csv;
  if (cfg.kind == "order") {
    if (cfg.ns.empty()) throw std::invalid_argument("need --n values");
    csv << "n,bound,clamped\n";
    for (const std::int64_t n : cfg.ns) {
      const double b = order_error_bound(n, cfg.gamma, cfg.beta);
      csv << n << "," << fmt_double(b) << ","
          << fmt_double(std::min(1.0, b)) << "\n";
    }
  } else if (cfg.kind == "hoeffding") {
    if (cfg.ns.empty()) throw std::invalid_argument("need --n values");
    csv << "n,width,epsilon,bound\n";
    for (const std::int64_t n : cfg.ns) {
      HoeffdingInput input{n, {{0.0, cfg.width}}, cfg.epsilon};
      csv << n << "," << fmt_double(cfg.width) << ","
          << fmt_double(cfg.epsilon) << "," << fmt_double(hoeffding_bound(input))
          << "\n";
    }
  } else {
    throw std::invalid_argument("unknown bound kind: " + cfg.kind);
  }
  if (cfg.output.empty()) {
    log << csv.str();
  } else {
    write_text_file(cfg.output, csv.str());
  }
  return 0;
}

}  // namespace memword::cli
