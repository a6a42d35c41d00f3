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

#ifndef MEMADVISOR_METRICS_HPP
#define MEMADVISOR_METRICS_HPP

#include <optional>
#include <vector>

#include "memadvisor/profile.hpp"

namespace memadvisor {

/// Shuffle traffic of one stage: bytes read from the parent stage plus bytes
/// written for the child stage. Throws std::overflow_error if the sum does
/// not fit the byte-count representation.
Bytes stage_shuffle(const StageRecord& s);

/// A run's shuffle size: the maximum stage_shuffle over its stages. The
/// loading stage (typically zero shuffle) participates like any other.
Bytes run_shuffle(const RunProfile& r);

/// Data expansion ratio of one run: shuffle size over input size.
double run_alpha(const RunProfile& r);

/// Mean of run_alpha over all runs. Requires at least one run.
double mean_alpha(const ProfileSet& ps);

/// Mean pairwise growth rate of shuffle size with respect to input size over
/// consecutive runs. Requires at least two runs (throws std::invalid_argument
/// otherwise). A shrinking shuffle yields a negative pairwise rate, which is
/// kept in the mean rather than clamped.
double inc_rate(const ProfileSet& ps);

/// All expansion metrics of a profile set in one pass.
struct ExpansionMetrics {
  std::vector<Bytes> per_run_shuffle_bytes;
  std::vector<double> per_run_alpha;
  double alpha_mean = 0.0;
  std::optional<double> inc_shuf;  // absent with fewer than two runs
};

ExpansionMetrics compute_metrics(const ProfileSet& ps);

}  // namespace memadvisor

#endif  // MEMADVISOR_METRICS_HPP
