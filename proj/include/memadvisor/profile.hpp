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

#ifndef MEMADVISOR_PROFILE_HPP
#define MEMADVISOR_PROFILE_HPP

#include <string>
#include <vector>

#include "memadvisor/bytes.hpp"

namespace memadvisor {

/// Shuffle traffic observed on one execution stage.
struct StageRecord {
  std::uint32_t stage_index = 0;
  Bytes shuffle_read_bytes = 0;
  Bytes shuffle_write_bytes = 0;

  bool operator==(const StageRecord&) const = default;
};

/// One execution of a workload at one input size.
struct RunProfile {
  std::string workload_id;
  Bytes input_bytes = 0;  // must be > 0
  bool cached_input = false;
  std::vector<StageRecord> stages;  // non-empty, indices contiguous from 0

  bool operator==(const RunProfile&) const = default;
};

/// All profiling runs of one workload, input sizes strictly ascending.
struct ProfileSet {
  std::string workload_id;
  std::vector<RunProfile> runs;

  bool operator==(const ProfileSet&) const = default;
};

/// Checks every type invariant; throws std::invalid_argument on the first
/// violation. Parsing enforces the same rules with line context.
void validate(const ProfileSet& ps);

}  // namespace memadvisor

#endif  // MEMADVISOR_PROFILE_HPP
