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

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "dirand/bounds.hpp"
#include "dirand/distribution.hpp"
#include "dirand/hash_family.hpp"
#include "dirand/protocol.hpp"

namespace dirand {

// Distribution file: { "n": int, "probs": { "<decimal outcome>": real } }.
nlohmann::json distribution_to_json(const OutcomeDistribution& dist);
OutcomeDistribution distribution_from_json(const nlohmann::json& j);
OutcomeDistribution load_distribution(const std::filesystem::path& path);
void save_distribution(const OutcomeDistribution& dist,
                       const std::filesystem::path& path);

nlohmann::json components_to_json(const std::vector<FlatComponent>& parts);

// Family file: { "kind", "n", "m_count", ... } with kind-specific payload:
// derandomized carries the field degree and delta, matrix the ordered
// support, explicit the hex-packed member tables (4 symbols per byte, input
// 4k+i in bits 2i..2i+1 of byte k).
nlohmann::json family_to_json(const HashFamily& family);
HashFamily family_from_json(const nlohmann::json& j);
HashFamily load_family(const std::filesystem::path& path);
void save_family(const HashFamily& family, const std::filesystem::path& path);

// CSV with header "epsilon,v"; lines starting with '#' are skipped.
FCurve load_fcurve(const std::filesystem::path& path);
FCurve fcurve_from_csv(const std::string& text);

nlohmann::json covering_report_to_json(const CoveringReport& report);
nlohmann::json run_report_to_json(const RunReport& report);

// One JSON line per device response: {"trial"?, "round", "device", "input",
// "output", "pass"} with input/output as 3-bit arrays.
std::string transcripts_to_jsonl(
    const std::vector<Transcript>& transcripts,
    std::optional<std::uint64_t> trial = std::nullopt);

// RFC 4180 field quoting.
std::string csv_escape(const std::string& field);
std::string csv_row(const std::vector<std::string>& fields);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     const std::string& text);

}  // namespace dirand
