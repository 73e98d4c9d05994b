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

#include "dirand/serialization.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace dirand {

namespace {

using nlohmann::json;

std::uint64_t parse_u64(const std::string& text, const char* what) {
  std::uint64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  require(ec == std::errc() && ptr == text.data() + text.size(),
          ErrorCode::invalid_input, std::string("malformed ") + what);
  return value;
}

std::string hex_pack_table(const std::vector<std::uint8_t>& table) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve((table.size() + 3) / 4 * 2);
  for (std::size_t base = 0; base < table.size(); base += 4) {
    std::uint8_t byte = 0;
    for (std::size_t i = 0; i < 4 && base + i < table.size(); ++i) {
      byte |= static_cast<std::uint8_t>(table[base + i] << (2 * i));
    }
    out.push_back(digits[byte >> 4]);
    out.push_back(digits[byte & 0xF]);
  }
  return out;
}

std::vector<std::uint8_t> hex_unpack_table(const std::string& hex,
                                           std::size_t entries) {
  require(hex.size() == (entries + 3) / 4 * 2, ErrorCode::invalid_input,
          "member table has the wrong length");
  const auto nibble = [](char c) -> std::uint8_t {
    if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<std::uint8_t>(c - 'A' + 10);
    fail(ErrorCode::invalid_input, "bad hex digit in member table");
  };
  std::vector<std::uint8_t> table(entries);
  for (std::size_t i = 0; i < entries; ++i) {
    const std::uint8_t byte = static_cast<std::uint8_t>(
        (nibble(hex[(i / 4) * 2]) << 4) | nibble(hex[(i / 4) * 2 + 1]));
    table[i] = (byte >> (2 * (i % 4))) & 3u;
  }
  return table;
}

}  // namespace

json distribution_to_json(const OutcomeDistribution& dist) {
  json probs = json::object();
  for (const auto& [outcome, p] : dist.probs()) {
    probs[std::to_string(outcome)] = p;
  }
  return json{{"n", dist.n()}, {"probs", std::move(probs)}};
}

OutcomeDistribution distribution_from_json(const json& j) {
  require(j.is_object() && j.contains("n") && j.contains("probs"),
          ErrorCode::invalid_input,
          "distribution file needs fields \"n\" and \"probs\"");
  require(j["n"].is_number_unsigned(), ErrorCode::invalid_input,
          "field \"n\" must be a positive integer");
  std::map<std::uint64_t, double> probs;
  for (const auto& [key, value] : j["probs"].items()) {
    require(value.is_number(), ErrorCode::invalid_input,
            "probability must be a number");
    probs[parse_u64(key, "outcome key")] = value.get<double>();
  }
  return OutcomeDistribution(j["n"].get<unsigned>(), std::move(probs));
}

OutcomeDistribution load_distribution(const std::filesystem::path& path) {
  return distribution_from_json(json::parse(read_text_file(path)));
}

void save_distribution(const OutcomeDistribution& dist,
                       const std::filesystem::path& path) {
  write_text_file(path, distribution_to_json(dist).dump(2) + "\n");
}

json components_to_json(const std::vector<FlatComponent>& parts) {
  json out = json::array();
  for (const FlatComponent& c : parts) {
    json support = json::array();
    for (std::uint64_t outcome : c.support) {
      support.push_back(std::to_string(outcome));
    }
    out.push_back(json{{"support", std::move(support)}, {"weight", c.weight}});
  }
  return out;
}

json family_to_json(const HashFamily& family) {
  json j{{"n", family.n()}, {"m_count", family.size()}};
  switch (family.kind()) {
    case HashFamily::Kind::derandomized:
      j["kind"] = "derandomized";
      j["field_degree"] = family.field_degree();
      j["delta"] = family.delta();
      break;
    case HashFamily::Kind::matrix: {
      j["kind"] = "matrix";
      json support = json::array();
      for (std::uint64_t s : family.matrix_support()) {
        support.push_back(std::to_string(s));
      }
      j["support"] = std::move(support);
      break;
    }
    case HashFamily::Kind::explicit_table: {
      j["kind"] = "explicit";
      json members = json::array();
      for (const auto& table : family.tables()) {
        members.push_back(hex_pack_table(table));
      }
      j["members"] = std::move(members);
      break;
    }
    case HashFamily::Kind::full:
      j["kind"] = "full";
      break;
  }
  return j;
}

HashFamily family_from_json(const json& j) {
  require(j.is_object() && j.contains("kind") && j.contains("n"),
          ErrorCode::invalid_input,
          "family file needs fields \"kind\" and \"n\"");
  const std::string kind = j["kind"].get<std::string>();
  const unsigned n = j["n"].get<unsigned>();
  if (kind == "derandomized") {
    require(j.contains("delta"), ErrorCode::invalid_input,
            "derandomized family needs \"delta\"");
    HashFamily fam = HashFamily::build_derandomized(n, j["delta"].get<double>());
    if (j.contains("field_degree")) {
      require(j["field_degree"].get<unsigned>() == fam.field_degree(),
              ErrorCode::invalid_input,
              "field degree does not match the construction");
    }
    return fam;
  }
  if (kind == "matrix") {
    std::vector<std::uint64_t> support;
    for (const auto& s : j.at("support")) {
      support.push_back(parse_u64(s.get<std::string>(), "support string"));
    }
    return HashFamily::build_matrix(n, std::move(support));
  }
  if (kind == "explicit") {
    const std::size_t entries = 1ull << n;
    std::vector<std::vector<std::uint8_t>> tables;
    for (const auto& member : j.at("members")) {
      tables.push_back(hex_unpack_table(member.get<std::string>(), entries));
    }
    return HashFamily::build_explicit(n, std::move(tables));
  }
  if (kind == "full") {
    return HashFamily::build_full(n);
  }
  fail(ErrorCode::invalid_input, "unknown family kind \"" + kind + "\"");
}

HashFamily load_family(const std::filesystem::path& path) {
  return family_from_json(json::parse(read_text_file(path)));
}

void save_family(const HashFamily& family,
                 const std::filesystem::path& path) {
  write_text_file(path, family_to_json(family).dump(2) + "\n");
}

FCurve fcurve_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<double, double>> points;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!saw_header) {
      require(line == "epsilon,v", ErrorCode::invalid_input,
              "f-curve file must start with the header \"epsilon,v\"");
      saw_header = true;
      continue;
    }
    const auto comma = line.find(',');
    require(comma != std::string::npos, ErrorCode::invalid_input,
            "f-curve row is not \"epsilon,v\"");
    try {
      points.emplace_back(std::stod(line.substr(0, comma)),
                          std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      fail(ErrorCode::invalid_input, "malformed f-curve row: " + line);
    }
  }
  require(saw_header, ErrorCode::invalid_input, "f-curve file is empty");
  return FCurve::from_points(std::move(points));
}

FCurve load_fcurve(const std::filesystem::path& path) {
  return fcurve_from_csv(read_text_file(path));
}

json covering_report_to_json(const CoveringReport& report) {
  json j{{"exhaustive", report.exhaustive},
         {"total_subsets", report.total_subsets},
         {"checked", report.checked},
         {"uncovered", report.uncovered},
         {"uncovered_fraction", report.uncovered_fraction},
         {"members_scanned", report.members_scanned}};
  if (!report.exhaustive) {
    j["wilson_low99"] = report.wilson_low99;
    j["wilson_high99"] = report.wilson_high99;
  }
  return j;
}

json run_report_to_json(const RunReport& report) {
  json rounds = json::array();
  for (const RoundSummary& r : report.rounds) {
    json jr{{"bit", r.bit}, {"failures", r.failures}};
    if (r.first_failing_device) {
      jr["first_failing_device"] = *r.first_failing_device;
    }
    rounds.push_back(std::move(jr));
  }
  json j{{"aborted", report.aborted},
         {"failures", report.failures},
         {"rounds_executed", report.rounds_executed},
         {"threshold", report.threshold},
         {"rounds", std::move(rounds)}};
  if (report.bit) j["bit"] = *report.bit;
  if (report.first_failing_device) {
    j["first_failing_device"] = *report.first_failing_device;
  }
  return j;
}

std::string transcripts_to_jsonl(const std::vector<Transcript>& transcripts,
                                 std::optional<std::uint64_t> trial) {
  std::string out;
  for (std::size_t round = 0; round < transcripts.size(); ++round) {
    for (const TranscriptEntry& e : transcripts[round]) {
      json line{
          {"round", round},
          {"device", e.device_id},
          {"input", {e.input.x ? 1 : 0, e.input.y ? 1 : 0, e.input.z ? 1 : 0}},
          {"output",
           {e.output.a ? 1 : 0, e.output.b ? 1 : 0, e.output.c ? 1 : 0}},
          {"pass", passes_test(e.input, e.output)}};
      if (trial) line["trial"] = *trial;
      out += line.dump();
      out += '\n';
    }
  }
  return out;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(fields[i]);
  }
  out += "\r\n";
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::invalid_config,
          "cannot open file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::invalid_config,
          "cannot write file: " + path.string());
  out << text;
  require(out.good(), ErrorCode::invalid_config,
          "failed writing file: " + path.string());
}

}  // namespace dirand
