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

#ifndef MEMADVISOR_INGEST_HPP
#define MEMADVISOR_INGEST_HPP

#include <cstddef>
#include <filesystem>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "memadvisor/profile.hpp"

namespace memadvisor {

/// Raised for any defect in a profile file. `line` is 1-based; 0 means the
/// defect concerns the stream as a whole (e.g. an empty file).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses the line-oriented profile format: one JSON object per line,
///   {"workload_id": ..., "input_bytes": ..., "cached_input": ..., "stages": [...]}
/// `#` starts a comment line; blank lines are skipped. Runs are returned in
/// canonical order (ascending input size) regardless of file order.
///
/// Rejects, with the offending line number: malformed JSON, wrong field types,
/// unknown fields, mixed workload ids, duplicate input sizes, and empty input.
ProfileSet parse_profiles(std::istream& in);

ProfileSet parse_profiles_file(const std::filesystem::path& path);

/// Canonical serialization: runs ascending by input size, stages ascending by
/// index, one object per line. parse_profiles(write_profiles(ps)) == ps.
void write_profiles(const ProfileSet& ps, std::ostream& out);

std::string to_jsonl(const ProfileSet& ps);

/// What the classifier will be able to compute from this set.
struct ValidationReport {
  bool alpha_computable = false;  // any run present
  bool inc_computable = false;    // needs at least two runs
  std::size_t run_count = 0;
  std::vector<std::string> warnings;
};

ValidationReport validate_for_classification(const ProfileSet& ps);

}  // namespace memadvisor

#endif  // MEMADVISOR_INGEST_HPP
