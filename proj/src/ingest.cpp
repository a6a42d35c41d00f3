/*
 * Copyright 2026 The memadvisor Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "memadvisor/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "memadvisor/metrics.hpp"

namespace memadvisor {

namespace {

using Json = nlohmann::ordered_json;

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

[[noreturn]] void fail(std::size_t line_no, const std::string& msg) {
  throw ParseError(line_no, msg);
}

// Typed field access that names the field in the error.
const Json& field(const Json& obj, const char* name, std::size_t line_no) {
  auto it = obj.find(name);
  if (it == obj.end()) fail(line_no, std::string("missing field '") + name + "'");
  return *it;
}

Bytes byte_count(const Json& obj, const char* name, std::size_t line_no) {
  // Parsed non-negative integers always land in the unsigned representation;
  // anything else (negative, fractional, string) is a grammar violation.
  const Json& v = field(obj, name, line_no);
  if (!v.is_number_unsigned())
    fail(line_no, std::string("field '") + name + "' must be a non-negative integer");
  return v.get<Bytes>();
}

void reject_unknown_keys(const Json& obj, std::initializer_list<const char*> known,
                         std::size_t line_no) {
  for (const auto& [key, _] : obj.items()) {
    if (std::none_of(known.begin(), known.end(),
                     [&key](const char* k) { return key == k; })) {
      fail(line_no, "unknown field '" + key + "'");
    }
  }
}

RunProfile parse_run(const std::string& line, std::size_t line_no) {
  Json obj;
  try {
    obj = Json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    fail(line_no, std::string("not a JSON object (") + e.what() + ")");
  }
  if (!obj.is_object()) fail(line_no, "not a JSON object");
  reject_unknown_keys(obj, {"workload_id", "input_bytes", "cached_input", "stages"},
                      line_no);

  RunProfile run;
  const Json& id = field(obj, "workload_id", line_no);
  if (!id.is_string() || id.get<std::string>().empty())
    fail(line_no, "field 'workload_id' must be a non-empty string");
  run.workload_id = id.get<std::string>();

  run.input_bytes = byte_count(obj, "input_bytes", line_no);
  if (run.input_bytes == 0) fail(line_no, "field 'input_bytes' must be positive");

  const Json& cached = field(obj, "cached_input", line_no);
  if (!cached.is_boolean()) fail(line_no, "field 'cached_input' must be a boolean");
  run.cached_input = cached.get<bool>();

  const Json& stages = field(obj, "stages", line_no);
  if (!stages.is_array() || stages.empty())
    fail(line_no, "field 'stages' must be a non-empty array");

  for (const Json& s : stages) {
    if (!s.is_object()) fail(line_no, "stage entries must be objects");
    reject_unknown_keys(
        s, {"stage_index", "shuffle_read_bytes", "shuffle_write_bytes"}, line_no);
    StageRecord rec;
    Bytes idx = byte_count(s, "stage_index", line_no);
    if (idx > std::numeric_limits<std::uint32_t>::max())
      fail(line_no, "field 'stage_index' out of range");
    rec.stage_index = static_cast<std::uint32_t>(idx);
    rec.shuffle_read_bytes = byte_count(s, "shuffle_read_bytes", line_no);
    rec.shuffle_write_bytes = byte_count(s, "shuffle_write_bytes", line_no);
    run.stages.push_back(rec);
  }

  // Indices must be exactly 0..n-1; order in the file is free.
  std::sort(run.stages.begin(), run.stages.end(),
            [](const StageRecord& a, const StageRecord& b) {
              return a.stage_index < b.stage_index;
            });
  for (std::size_t i = 0; i < run.stages.size(); ++i) {
    if (run.stages[i].stage_index != i)
      fail(line_no, "stage indices must be unique and contiguous from 0");
  }
  return run;
}

}  // namespace

void validate(const ProfileSet& ps) {
  if (ps.runs.empty()) throw std::invalid_argument("profile set has no runs");
  for (std::size_t r = 0; r < ps.runs.size(); ++r) {
    const RunProfile& run = ps.runs[r];
    if (run.workload_id != ps.workload_id)
      throw std::invalid_argument("profile set mixes workload ids");
    if (run.input_bytes == 0) throw std::invalid_argument("input size must be positive");
    if (run.stages.empty()) throw std::invalid_argument("run has no stages");
    for (std::size_t i = 0; i < run.stages.size(); ++i) {
      if (run.stages[i].stage_index != i)
        throw std::invalid_argument("stage indices must be contiguous from 0");
    }
    if (r > 0 && run.input_bytes <= ps.runs[r - 1].input_bytes)
      throw std::invalid_argument("input sizes must be strictly ascending");
  }
}

ProfileSet parse_profiles(std::istream& in) {
  ProfileSet ps;
  std::string line;
  std::size_t line_no = 0;
  std::set<Bytes> seen_inputs;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();  // CRLF input
    if (is_blank(line) || line.front() == '#') continue;

    RunProfile run = parse_run(line, line_no);
    if (ps.runs.empty()) {
      ps.workload_id = run.workload_id;
    } else if (run.workload_id != ps.workload_id) {
      fail(line_no, "workload_id '" + run.workload_id +
                        "' differs from '" + ps.workload_id +
                        "'; a file holds exactly one workload");
    }
    if (!seen_inputs.insert(run.input_bytes).second) {
      fail(line_no, "duplicate input_bytes " + std::to_string(run.input_bytes) +
                        "; profiling runs must use distinct input sizes");
    }
    ps.runs.push_back(std::move(run));
  }

  if (ps.runs.empty()) fail(0, "no profile records found");

  std::sort(ps.runs.begin(), ps.runs.end(),
            [](const RunProfile& a, const RunProfile& b) {
              return a.input_bytes < b.input_bytes;
            });
  validate(ps);
  return ps;
}

ProfileSet parse_profiles_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open profile file: " + path.string());
  return parse_profiles(in);
}

void write_profiles(const ProfileSet& ps, std::ostream& out) {
  for (const RunProfile& run : ps.runs) {
    Json stages = Json::array();
    for (const StageRecord& s : run.stages) {
      stages.push_back({{"stage_index", s.stage_index},
                        {"shuffle_read_bytes", s.shuffle_read_bytes},
                        {"shuffle_write_bytes", s.shuffle_write_bytes}});
    }
    Json obj{{"workload_id", run.workload_id},
             {"input_bytes", run.input_bytes},
             {"cached_input", run.cached_input},
             {"stages", std::move(stages)}};
    out << obj.dump() << '\n';
  }
}

std::string to_jsonl(const ProfileSet& ps) {
  std::ostringstream out;
  write_profiles(ps, out);
  return out.str();
}

ValidationReport validate_for_classification(const ProfileSet& ps) {
  validate(ps);
  ValidationReport report;
  report.run_count = ps.runs.size();
  report.alpha_computable = !ps.runs.empty();
  report.inc_computable = ps.runs.size() >= 2;
  if (!report.inc_computable) {
    report.warnings.push_back(
        "single run: an expanding workload cannot be subdivided; add a second "
        "profiling run");
  }
  bool all_zero = std::all_of(ps.runs.begin(), ps.runs.end(), [](const RunProfile& r) {
    return run_shuffle(r) == 0;
  });
  if (all_zero) {
    report.warnings.push_back("degenerate: data expansion ratio is 0 in all runs");
  }
  return report;
}

}  // namespace memadvisor
