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

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dirand/experiment.hpp"
#include "dirand/serialization.hpp"

namespace {

using dirand::ErrorCode;

void write_or_print(const std::string& out_file, const std::string& text) {
  if (out_file.empty()) {
    std::cout << text;
  } else {
    dirand::write_text_file(out_file, text);
  }
}

int run_command(CLI::App& app) {
  auto* run = app.add_subcommand("run", "execute protocol trials");
  auto config_file = std::make_shared<std::string>();
  auto cfg = std::make_shared<dirand::ExperimentConfig>();
  auto mode = std::make_shared<std::string>("multi");
  run->add_option("--config", *config_file,
                  "experiment config JSON (flags override nothing when set)");
  run->add_option("--mode", *mode, "single|multi|oneshot|robust");
  run->add_option("--epsilon", cfg->epsilon, "target output bias");
  run->add_option("--delta", cfg->delta, "failure probability bound");
  run->add_option("--rounds", cfg->rounds,
                  "round count (0 derives it from the f-curve)");
  run->add_option("--device", cfg->device,
                  "ghz|lhv:<index>|noisy:<mu>|adversary:<name>");
  run->add_option("--family-file", cfg->family_file, "hash family JSON");
  run->add_option("--source-file", cfg->source_file, "source distribution JSON");
  run->add_option("--fcurve-file", cfg->fcurve_file, "f-curve CSV");
  run->add_option("--trials", cfg->trials, "number of independent trials");
  run->add_option("--seed", cfg->master_seed, "master seed");
  run->add_option("--threads", cfg->threads, "worker threads");
  run->add_option("--out", cfg->out_prefix,
                  "output prefix (<prefix>.json/.csv/.ndjson)");
  run->add_option("--transcripts", cfg->transcripts_file,
                  "write per-device transcripts as JSON lines");
  run->callback([config_file, cfg, mode] {
    dirand::ExperimentConfig config;
    if (!config_file->empty()) {
      config = dirand::ExperimentConfig::from_json_file(*config_file);
    } else {
      config = *cfg;
      config.mode = dirand::parse_run_mode(*mode);
      config.base_dir = std::filesystem::current_path();
    }
    const dirand::SummaryReport summary = dirand::run_experiment(config);
    std::cout << summary.to_json(false).dump(2) << "\n";
  });
  return 0;
}

void bounds_command(CLI::App& app) {
  auto* bounds = app.add_subcommand("bounds", "print analytic bound tables");
  auto params = std::make_shared<dirand::BoundTableParams>();
  auto sweep = std::make_shared<std::string>();
  auto out_file = std::make_shared<std::string>();
  bounds->add_option("--epsilon", params->epsilon, "target output bias")
      ->required();
  bounds->add_option("--delta", params->delta, "failure probability bound")
      ->required();
  bounds->add_option("--m", params->m, "devices per round");
  bounds->add_option("--fcurve", params->fcurve_file, "f-curve CSV")
      ->required();
  bounds->add_option("--sweep-l", *sweep, "round sweep as <min>:<max>");
  bounds->add_option("--empirical-trials", params->empirical_trials,
                     "noisy-honest Monte Carlo trials per row");
  bounds->add_option("--seed", params->seed, "Monte Carlo seed");
  bounds->add_option("--format", params->format, "csv|json");
  bounds->add_option("--out", *out_file, "output file (stdout when absent)");
  bounds->callback([params, sweep, out_file] {
    if (!sweep->empty()) {
      const auto colon = sweep->find(':');
      dirand::require(colon != std::string::npos, ErrorCode::invalid_config,
                      "--sweep-l expects <min>:<max>");
      params->l_min = std::stoll(sweep->substr(0, colon));
      params->l_max = std::stoll(sweep->substr(colon + 1));
    }
    params->base_dir = std::filesystem::current_path();
    write_or_print(*out_file, dirand::emit_bound_tables(*params));
  });
}

void family_command(CLI::App& app) {
  auto* family = app.add_subcommand("family", "build or verify hash families");
  family->require_subcommand(1);

  auto* build = family->add_subcommand("build", "construct a family");
  auto kind = std::make_shared<std::string>("derandomized");
  auto n = std::make_shared<unsigned>(0);
  auto delta = std::make_shared<double>(1.0 / 16.0);
  auto support_file = std::make_shared<std::string>();
  auto rn = std::make_shared<unsigned>(0);
  auto build_out = std::make_shared<std::string>();
  build->add_option("--kind", *kind, "derandomized|matrix|full|identity");
  build->add_option("--n", *n, "input bit length")->required();
  build->add_option("--delta", *delta,
                    "dependence parameter (derandomized, < 1/8)");
  build->add_option("--support-file", *support_file,
                    "distribution JSON whose support labels the matrix "
                    "columns (matrix kind)");
  build->add_option("--rn", *rn,
                    "even min-entropy Rn for a canonical matrix support "
                    "0..4^(Rn/2)-1 (matrix kind without --support-file)");
  build->add_option("--out", *build_out, "output family JSON")->required();
  build->callback([kind, n, delta, support_file, rn, build_out] {
    dirand::HashFamily fam = [&] {
      if (*kind == "derandomized") {
        return dirand::HashFamily::build_derandomized(*n, *delta);
      }
      if (*kind == "matrix") {
        std::vector<std::uint64_t> support;
        if (!support_file->empty()) {
          const auto dist = dirand::load_distribution(*support_file);
          for (const auto& [outcome, p] : dist.probs()) {
            support.push_back(outcome);
          }
        } else {
          dirand::require(*rn >= 2 && *rn % 2 == 0,
                          ErrorCode::invalid_config,
                          "--rn must be an even integer >= 2");
          const std::uint64_t count = 1ull << *rn;
          for (std::uint64_t i = 0; i < count; ++i) support.push_back(i);
        }
        return dirand::HashFamily::build_matrix(*n, std::move(support));
      }
      if (*kind == "full") return dirand::HashFamily::build_full(*n);
      if (*kind == "identity") return dirand::HashFamily::identity(*n);
      dirand::fail(ErrorCode::invalid_config,
                   "unknown family kind \"" + *kind + "\"");
    }();
    dirand::save_family(fam, *build_out);
    std::cout << dirand::family_to_json(fam).dump(2) << "\n";
  });

  auto* verify = family->add_subcommand("verify", "check the covering property");
  auto family_file = std::make_shared<std::string>();
  auto opts = std::make_shared<dirand::CoveringOptions>();
  auto mode = std::make_shared<std::string>("exhaustive");
  auto verify_out = std::make_shared<std::string>();
  verify->add_option("--family", *family_file, "family JSON")->required();
  verify->add_option("--mode", *mode, "exhaustive|sampled");
  verify->add_option("--trials", opts->sample_trials,
                     "sampled 4-subsets (sampled mode)");
  verify->add_option("--budget", opts->subset_budget,
                     "exhaustive subset budget");
  verify->add_option("--seed", opts->seed, "scan seed");
  verify->add_option("--out", *verify_out, "report JSON (stdout when absent)");
  verify->callback([family_file, opts, mode, verify_out] {
    if (*mode == "exhaustive") {
      opts->mode = dirand::CoveringMode::exhaustive;
    } else if (*mode == "sampled") {
      opts->mode = dirand::CoveringMode::sampled;
    } else {
      dirand::fail(ErrorCode::invalid_config,
                   "mode must be exhaustive or sampled");
    }
    const dirand::HashFamily fam = dirand::load_family(*family_file);
    const dirand::CoveringReport report = dirand::verify_covering(fam, *opts);
    write_or_print(*verify_out,
                   dirand::covering_report_to_json(report).dump(2) + "\n");
  });
}

void decompose_command(CLI::App& app) {
  auto* decompose =
      app.add_subcommand("decompose", "flat decomposition of a distribution");
  auto in_file = std::make_shared<std::string>();
  auto out_file = std::make_shared<std::string>();
  decompose->add_option("--in", *in_file, "distribution JSON")->required();
  decompose->add_option("--out", *out_file, "components JSON (stdout when absent)");
  decompose->callback([in_file, out_file] {
    const auto dist = dirand::load_distribution(*in_file);
    const auto components = dirand::caratheodory_decompose(dist);
    write_or_print(*out_file,
                   dirand::components_to_json(components).dump(2) + "\n");
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulator and analysis tools for hash-fed tripartite-box "
               "randomness extraction"};
  app.require_subcommand(1);
  run_command(app);
  bounds_command(app);
  family_command(app);
  decompose_command(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const dirand::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
