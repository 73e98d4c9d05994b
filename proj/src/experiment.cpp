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

#include "dirand/experiment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <thread>

#include "dirand/serialization.hpp"

namespace dirand {

namespace {

using nlohmann::json;

DeviceModel make_named_adversary(const std::string& name) {
  if (name == "echo_pred") {
    // repeats the most recent predecessor's output; all-zero on the first
    // device
    return MemoryAdversary{
        name, [](const MerminInput&, const Transcript& history) {
          if (history.empty()) return MerminOutput{false, false, false};
          return history.back().output;
        }};
  }
  if (name == "zeros") {
    return MemoryAdversary{name, [](const MerminInput&, const Transcript&) {
                             return MerminOutput{false, false, false};
                           }};
  }
  fail(ErrorCode::invalid_config, "unknown adversary \"" + name + "\""
       " (known: echo_pred, zeros)");
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::string& file) {
  const std::filesystem::path p(file);
  return p.is_absolute() ? p : base / p;
}

double parse_number(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    require(used == text.size(), ErrorCode::invalid_config,
            std::string("malformed ") + what);
    return v;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorCode::invalid_config, std::string("malformed ") + what);
  }
}

}  // namespace

RunMode parse_run_mode(const std::string& text) {
  if (text == "single") return RunMode::single;
  if (text == "multi") return RunMode::multi;
  if (text == "oneshot" || text == "one-shot") return RunMode::one_shot;
  if (text == "robust") return RunMode::robust;
  fail(ErrorCode::invalid_config, "unknown mode \"" + text + "\""
       " (expected single|multi|oneshot|robust)");
}

DeviceModel parse_device_spec(const std::string& spec) {
  if (spec == "ghz") return HonestGhz{};
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string tail =
      colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "lhv") {
    const double index = parse_number(tail, "LHV strategy index");
    require(index >= 0 && index < kLhvStrategyCount &&
                index == std::floor(index),
            ErrorCode::invalid_config, "LHV index must be in [0, 64)");
    return DeterministicLhv{static_cast<unsigned>(index)};
  }
  if (head == "noisy") {
    const double mu = parse_number(tail, "noise probability");
    require(mu >= 0.0 && mu <= 1.0, ErrorCode::invalid_config,
            "noise probability must lie in [0, 1]");
    return NoisyHonest{mu};
  }
  if (head == "adversary") return make_named_adversary(tail);
  fail(ErrorCode::invalid_config, "unknown device spec \"" + spec + "\""
       " (expected ghz|lhv:<index>|noisy:<mu>|adversary:<name>)");
}

ExperimentConfig ExperimentConfig::from_json_file(
    const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    fail(ErrorCode::invalid_config,
         "config " + path.string() + ": " + e.what());
  }
  ExperimentConfig cfg;
  cfg.base_dir = path.has_parent_path() ? path.parent_path()
                                        : std::filesystem::path(".");
  try {
    if (j.contains("master_seed")) cfg.master_seed = j["master_seed"];
    if (j.contains("trials")) cfg.trials = j["trials"];
    if (j.contains("mode")) cfg.mode = parse_run_mode(j["mode"]);
    if (j.contains("rounds")) cfg.rounds = j["rounds"];
    if (j.contains("epsilon")) cfg.epsilon = j["epsilon"];
    if (j.contains("delta")) cfg.delta = j["delta"];
    if (j.contains("device")) cfg.device = j["device"];
    if (j.contains("source_file")) cfg.source_file = j["source_file"];
    if (j.contains("family_file")) cfg.family_file = j["family_file"];
    if (j.contains("fcurve_file")) cfg.fcurve_file = j["fcurve_file"];
    if (j.contains("threads")) cfg.threads = j["threads"];
    if (j.contains("out_prefix")) cfg.out_prefix = j["out_prefix"];
    if (j.contains("transcripts_file")) {
      cfg.transcripts_file = j["transcripts_file"];
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::invalid_config,
         "config " + path.string() + ": " + e.what());
  }
  return cfg;
}

json SummaryReport::to_json(bool include_rows) const {
  json histogram = json::object();
  for (const auto& [failures, count] : failure_histogram) {
    histogram[std::to_string(failures)] = count;
  }
  json j{{"rng", rng_name},
         {"master_seed", master_seed},
         {"mode", mode},
         {"trials", trials},
         {"rounds", rounds},
         {"threshold", threshold},
         {"devices_per_round", devices_per_round},
         {"aborts", aborts},
         {"abort_rate", abort_rate},
         {"failure_histogram", std::move(histogram)}};
  if (bias) {
    j["bias"] = json{{"estimate", bias->bias},
                     {"mean", bias->mean},
                     {"wilson_low99", bias->wilson_low},
                     {"wilson_high99", bias->wilson_high},
                     {"samples", bias->samples}};
  }
  if (bounds) {
    j["bounds"] = json{{"f", bounds->f},
                       {"required_rounds", bounds->required_rounds},
                       {"required_rounds_robust",
                        bounds->required_rounds_robust},
                       {"scaling_factor", bounds->scaling},
                       {"honest_mu", bounds->honest_mu},
                       {"chernoff_bound", bounds->chernoff_bound},
                       {"hoeffding_bound", bounds->hoeffding_bound}};
  }
  if (include_rows) {
    json jrows = json::array();
    for (const TrialRow& r : rows) {
      json row{{"trial", r.trial},
               {"aborted", r.aborted},
               {"failures", r.failures}};
      if (r.bit) row["bit"] = *r.bit;
      jrows.push_back(std::move(row));
    }
    j["rows"] = std::move(jrows);
  }
  return j;
}

std::string SummaryReport::rows_csv() const {
  std::string out = csv_row({"trial", "aborted", "failures", "bit"});
  for (const TrialRow& r : rows) {
    out += csv_row({std::to_string(r.trial), r.aborted ? "1" : "0",
                    std::to_string(r.failures),
                    r.bit ? std::to_string(*r.bit) : ""});
  }
  return out;
}

std::string SummaryReport::rows_ndjson() const {
  std::string out;
  for (const TrialRow& r : rows) {
    json row{{"trial", r.trial},
             {"aborted", r.aborted},
             {"failures", r.failures}};
    if (r.bit) row["bit"] = *r.bit;
    out += row.dump();
    out += '\n';
  }
  return out;
}

SummaryReport run_experiment(const ExperimentConfig& config) {
  require(config.trials >= 1, ErrorCode::invalid_config,
          "need at least one trial");
  require(config.threads >= 1 && config.threads <= 256,
          ErrorCode::invalid_config, "threads must lie in [1, 256]");
  require(!config.source_file.empty(), ErrorCode::invalid_config,
          "source_file is required");

  const OutcomeDistribution source =
      load_distribution(resolve(config.base_dir, config.source_file));
  const DeviceModel device = parse_device_spec(config.device);

  std::optional<FCurve> curve;
  if (!config.fcurve_file.empty()) {
    curve = load_fcurve(resolve(config.base_dir, config.fcurve_file));
  }
  std::optional<double> f;
  if (curve) f = curve->value_at(config.epsilon);

  ProtocolConfig protocol;
  protocol.epsilon = config.epsilon;
  protocol.delta = config.delta;
  protocol.devices = {device};
  protocol.record_transcripts = !config.transcripts_file.empty();

  std::uint64_t rounds = config.rounds;
  std::uint64_t threshold = 0;
  if (config.mode == RunMode::single || config.mode == RunMode::one_shot) {
    require(config.rounds <= 1, ErrorCode::invalid_config,
            "single and one-shot modes run exactly one round");
    rounds = 1;
  } else if (rounds == 0) {
    require(f.has_value(), ErrorCode::invalid_config,
            "deriving the round count needs an f-curve file");
    rounds = static_cast<std::uint64_t>(
        config.mode == RunMode::robust
            ? required_rounds_robust(*f, config.delta)
            : required_rounds(*f, config.delta));
  }
  if (config.mode == RunMode::robust) {
    require(f.has_value(), ErrorCode::invalid_config,
            "robust mode needs an f-curve file for the failure threshold");
    threshold = robust_threshold(rounds, *f);
  }

  if (config.mode == RunMode::one_shot) {
    // the matrix family is built internally from the flat support
    require(config.family_file.empty(), ErrorCode::invalid_config,
            "one-shot mode builds its own matrix family; drop family_file");
  } else {
    require(!config.family_file.empty(), ErrorCode::invalid_config,
            "family_file is required outside one-shot mode");
    protocol.family =
        load_family(resolve(config.base_dir, config.family_file));
    validate_protocol_config(protocol, source.n());
  }

  // validate everything before running or writing anything
  const BlockSourceOracle oracle = BlockSourceOracle::iid(source);

  SummaryReport summary;
  summary.rng_name = RngStream::kAlgorithmName;
  summary.master_seed = config.master_seed;
  summary.mode = config.mode == RunMode::single     ? "single"
                 : config.mode == RunMode::multi    ? "multi"
                 : config.mode == RunMode::one_shot ? "oneshot"
                                                    : "robust";
  summary.trials = config.trials;
  summary.rounds = rounds;
  summary.threshold = threshold;
  summary.rows.resize(config.trials);

  std::vector<std::string> transcript_chunks(
      protocol.record_transcripts ? config.trials : 0);

  const auto run_trial = [&](std::uint64_t trial) {
    RngStream rng = RngStream::from_master(config.master_seed, trial);
    RunReport report;
    switch (config.mode) {
      case RunMode::single: {
        const std::uint64_t x = sample(source, rng);
        RoundResult round = run_single_round(x, protocol, rng);
        report.rounds_executed = 1;
        report.failures = round.failures;
        report.first_failing_device = round.first_failing_device;
        if (round.failures > 0) {
          report.aborted = true;
        } else {
          report.bit = round.bit;
        }
        if (protocol.record_transcripts) {
          report.transcripts.push_back(std::move(round.transcript));
        }
        break;
      }
      case RunMode::multi:
        report = run_block_protocol(oracle, rounds, protocol, rng);
        break;
      case RunMode::one_shot:
        report = run_one_shot(source, protocol, rng);
        break;
      case RunMode::robust:
        report = run_robust(oracle, rounds, threshold, protocol, rng);
        break;
    }
    if (protocol.record_transcripts) {
      transcript_chunks[trial] =
          transcripts_to_jsonl(report.transcripts, trial);
    }
    summary.rows[trial] =
        TrialRow{trial, report.aborted, report.failures, report.bit};
  };

  if (config.threads == 1) {
    for (std::uint64_t t = 0; t < config.trials; ++t) run_trial(t);
  } else {
    // disjoint trial ranges; rows are written by index, so the aggregate is
    // identical whatever the interleaving
    std::vector<std::thread> workers;
    const std::uint64_t chunk =
        (config.trials + config.threads - 1) / config.threads;
    for (unsigned w = 0; w < config.threads; ++w) {
      const std::uint64_t begin = w * chunk;
      const std::uint64_t end = std::min<std::uint64_t>(
          begin + chunk, config.trials);
      if (begin >= end) break;
      workers.emplace_back([&, begin, end] {
        for (std::uint64_t t = begin; t < end; ++t) run_trial(t);
      });
    }
    for (std::thread& w : workers) w.join();
  }

  std::uint64_t ones = 0;
  std::uint64_t bits = 0;
  for (const TrialRow& r : summary.rows) {
    if (r.aborted) ++summary.aborts;
    ++summary.failure_histogram[r.failures];
    if (r.bit) {
      ++bits;
      ones += static_cast<std::uint64_t>(*r.bit);
    }
  }
  summary.abort_rate =
      static_cast<double>(summary.aborts) / static_cast<double>(config.trials);
  if (bits > 0) summary.bias = estimate_bias(ones, bits);

  summary.devices_per_round =
      config.mode == RunMode::one_shot
          ? static_cast<std::uint64_t>(
                std::countr_zero(source.support_size()) / 2)
          : protocol.family.size();
  if (f) {
    BoundColumns cols;
    cols.f = *f;
    cols.required_rounds = required_rounds(*f, config.delta);
    cols.required_rounds_robust = required_rounds_robust(*f, config.delta);
    cols.scaling = scaling_factor(*f);
    const auto m = static_cast<std::int64_t>(summary.devices_per_round);
    cols.honest_mu = honest_failure_budget(*f, m);
    cols.chernoff_bound =
        chernoff_abort_bound(*f, static_cast<std::int64_t>(rounds)).bound;
    cols.hoeffding_bound =
        hoeffding_false_abort_bound(*f, m, static_cast<std::int64_t>(rounds));
    summary.bounds = cols;
  }

  if (!config.out_prefix.empty()) {
    const std::filesystem::path prefix =
        resolve(config.base_dir, config.out_prefix);
    write_text_file(prefix.string() + ".json",
                    summary.to_json(false).dump(2) + "\n");
    write_text_file(prefix.string() + ".csv", summary.rows_csv());
    write_text_file(prefix.string() + ".ndjson", summary.rows_ndjson());
  }
  if (!config.transcripts_file.empty()) {
    std::string all;
    for (const std::string& chunk : transcript_chunks) all += chunk;
    write_text_file(resolve(config.base_dir, config.transcripts_file), all);
  }
  return summary;
}

std::string emit_bound_tables(const BoundTableParams& params) {
  require(!params.fcurve_file.empty(), ErrorCode::invalid_config,
          "bounds need an f-curve file");
  const FCurve curve =
      load_fcurve(resolve(params.base_dir, params.fcurve_file));
  const double f = curve.value_at(params.epsilon);
  require(params.m >= 1, ErrorCode::invalid_config,
          "device count must be positive");

  json summary{{"epsilon", params.epsilon},
               {"delta", params.delta},
               {"m", params.m},
               {"f", f},
               {"scaling_factor", scaling_factor(f)},
               {"honest_mu", honest_failure_budget(f, params.m)}};
  if (f < 1.0) {
    summary["required_rounds"] = required_rounds(f, params.delta);
    summary["required_rounds_robust"] =
        required_rounds_robust(f, params.delta);
  }

  struct Row {
    std::int64_t l;
    ChernoffAbortBound chernoff;
    double hoeffding;
    double exact_false_abort;
    std::optional<double> empirical_false_abort;
  };
  std::vector<Row> rows;
  if (params.l_max >= params.l_min && params.l_max > 0) {
    for (std::int64_t l = std::max<std::int64_t>(1, params.l_min);
         l <= params.l_max; ++l) {
      Row row;
      row.l = l;
      row.chernoff = chernoff_abort_bound(f, l);
      row.hoeffding = hoeffding_false_abort_bound(f, params.m, l);
      row.exact_false_abort =
          exact_false_abort_probability(f, params.m, l);
      if (params.empirical_trials > 0) {
        // Monte Carlo of honest devices at the tolerated failure budget
        const double mu = honest_failure_budget(f, params.m);
        const std::uint64_t threshold = robust_threshold(l, f);
        std::uint64_t aborts = 0;
        for (std::uint64_t t = 0; t < params.empirical_trials; ++t) {
          RngStream rng = RngStream::from_master(params.seed ^ l, t);
          std::uint64_t failures = 0;
          for (std::int64_t u = 0; u < params.m * l; ++u) {
            if (rng.bernoulli(mu)) ++failures;
          }
          if (failures > threshold) ++aborts;
        }
        row.empirical_false_abort = static_cast<double>(aborts) /
                                    static_cast<double>(
                                        params.empirical_trials);
      }
      rows.push_back(row);
    }
  }

  if (params.format == "json") {
    json jrows = json::array();
    for (const Row& r : rows) {
      json jr{{"l", r.l},
              {"chernoff_bound", r.chernoff.bound},
              {"chernoff_exact", r.chernoff.exact_binomial},
              {"hoeffding_bound", r.hoeffding},
              {"false_abort_exact", r.exact_false_abort}};
      if (r.empirical_false_abort) {
        jr["false_abort_empirical"] = *r.empirical_false_abort;
      }
      jrows.push_back(std::move(jr));
    }
    return json{{"summary", std::move(summary)}, {"rows", std::move(jrows)}}
        .dump(2) + "\n";
  }
  require(params.format == "csv", ErrorCode::invalid_config,
          "format must be csv or json");
  std::ostringstream out;
  out << "# " << summary.dump() << "\n";
  std::vector<std::string> header{"l", "chernoff_bound", "chernoff_exact",
                                  "hoeffding_bound", "false_abort_exact"};
  if (params.empirical_trials > 0) header.push_back("false_abort_empirical");
  out << csv_row(header);
  for (const Row& r : rows) {
    std::vector<std::string> fields{
        std::to_string(r.l), std::to_string(r.chernoff.bound),
        std::to_string(r.chernoff.exact_binomial),
        std::to_string(r.hoeffding), std::to_string(r.exact_false_abort)};
    if (r.empirical_false_abort) {
      fields.push_back(std::to_string(*r.empirical_false_abort));
    }
    out << csv_row(fields);
  }
  return out.str();
}

}  // namespace dirand
