// Copyright 2026 The dirand contributors
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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dirand/bounds.hpp"
#include "dirand/mermin.hpp"
#include "dirand/protocol.hpp"

namespace dirand {

enum class RunMode { single, multi, one_shot, robust };

RunMode parse_run_mode(const std::string& text);

// "ghz" | "lhv:<index>" | "noisy:<mu>" | "adversary:<name>". Named
// adversaries come from a small built-in registry.
DeviceModel parse_device_spec(const std::string& spec);

// Experiment description; file references are resolved against base_dir
// (the directory of the config file, or the working directory for CLI
// flags). Trial i draws from the stream derived as stream(master_seed, i).
struct ExperimentConfig {
  std::uint64_t master_seed = 1;
  std::uint64_t trials = 1;
  RunMode mode = RunMode::multi;
  std::uint64_t rounds = 0;  // 0 = derive from (epsilon, delta, f-curve)
  double epsilon = 0.01;
  double delta = 1e-3;
  std::string device = "ghz";
  std::string source_file;
  std::string family_file;  // unused in one-shot mode
  std::string fcurve_file;  // needed to derive rounds or robust threshold
  unsigned threads = 1;
  std::string out_prefix;  // writes <prefix>.json/.csv/.ndjson when set
  std::string transcripts_file;  // per-device JSON lines when set
  std::filesystem::path base_dir = ".";

  static ExperimentConfig from_json_file(const std::filesystem::path& path);
};

struct TrialRow {
  std::uint64_t trial;
  bool aborted;
  std::uint64_t failures;
  std::optional<int> bit;
};

struct BoundColumns {
  double f = 0.0;
  std::int64_t required_rounds = 0;
  std::int64_t required_rounds_robust = 0;
  double scaling = 0.0;
  double honest_mu = 0.0;
  double chernoff_bound = 0.0;
  double hoeffding_bound = 0.0;
};

struct SummaryReport {
  std::string rng_name;
  std::uint64_t master_seed = 0;
  std::string mode;
  std::uint64_t trials = 0;
  std::uint64_t rounds = 0;
  std::uint64_t threshold = 0;
  std::uint64_t devices_per_round = 0;
  std::uint64_t aborts = 0;
  double abort_rate = 0.0;
  std::optional<BiasEstimate> bias;  // over non-aborted output bits
  std::map<std::uint64_t, std::uint64_t> failure_histogram;
  std::optional<BoundColumns> bounds;
  std::vector<TrialRow> rows;

  nlohmann::json to_json(bool include_rows) const;
  std::string rows_csv() const;
  std::string rows_ndjson() const;
};

SummaryReport run_experiment(const ExperimentConfig& config);

struct BoundTableParams {
  double epsilon = 0.01;
  double delta = 1e-3;
  std::int64_t m = 1;  // devices per round
  std::string fcurve_file;
  std::int64_t l_min = 0, l_max = 0;  // optional sweep over round counts
  std::uint64_t empirical_trials = 0;  // per-row noisy-honest Monte Carlo
  std::uint64_t seed = 1;
  std::string format = "csv";  // csv | json
  std::filesystem::path base_dir = ".";
};

// Bounds table for the given parameters: one summary block plus one row per
// swept round count with analytic and (optionally) empirical columns.
std::string emit_bound_tables(const BoundTableParams& params);

}  // namespace dirand
