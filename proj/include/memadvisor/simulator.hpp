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

#ifndef MEMADVISOR_SIMULATOR_HPP
#define MEMADVISOR_SIMULATOR_HPP

#include <cstdint>
#include <vector>

#include "memadvisor/classifier.hpp"
#include "memadvisor/predictor.hpp"

namespace memadvisor {

/// A synthetic stage-structured workload. Stage 0 is the loading stage and
/// carries no shuffle; the peak stage's shuffle-to-input ratio falls inside
/// the category's band:
///   Shrinking (0, 0.5]   Medium (0.5, 1)
///   Expanding.Medium [1, 3)   Expanding.Rapid [3, 6]
/// The Rapid band deliberately runs past the category's expansion factor so
/// plan evaluation sees above-forecast shuffle volumes, not only easy cases.
struct SimWorkloadSpec {
  Category category = Category::kShrinking;
  Bytes input_bytes = 0;
  std::uint32_t stage_count = 2;
  std::vector<Bytes> per_stage_shuffle_bytes;  // [0] == 0
  std::uint64_t seed = 0;

  bool operator==(const SimWorkloadSpec&) const = default;
};

/// Occupancy outcome of one executor under a fixed capacity.
///
/// Per stage, the executor is charged pinned storage (the cached input share
/// when caching is on) plus flexible demand (loading buffers and shuffle
/// intermediates). Flexible demand above the Spark-managed share spills to
/// disk; pinned storage cannot spill, so pinned demand above the share is an
/// out-of-memory event. Every charged byte lands in occupancy or spill.
struct SimResult {
  Bytes peak_executor_bytes = 0;
  Bytes spilled_bytes = 0;
  bool oom = false;
  std::int64_t headroom_bytes = 0;  // spark share - peak; negative iff oom
  Bytes spark_share_bytes = 0;

  struct StagePoint {
    std::uint32_t stage_index = 0;
    Bytes occupancy_bytes = 0;

    bool operator==(const StagePoint&) const = default;
  };
  std::vector<StagePoint> timeline;

  bool operator==(const SimResult&) const = default;
};

/// Deterministic for a given seed. Requires stage_count >= 2 and
/// input_bytes >= 4 (smaller inputs cannot hit every band with whole bytes).
SimWorkloadSpec generate(Category category, Bytes input_bytes,
                         std::uint32_t stage_count, std::uint64_t seed);

/// Walks the stages in order against the given executor capacity.
/// Throws std::invalid_argument when capacity does not exceed the reserved
/// region.
SimResult simulate(const SimWorkloadSpec& spec, Bytes capacity_bytes,
                   const ClusterConfig& cfg);

/// Trial statistics for one capacity.
struct CapacityStats {
  Bytes capacity_bytes = 0;
  double oom_rate = 0.0;
  double mean_waste_ratio = 0.0;  // mean headroom / spark share
  double mean_spilled_bytes = 0.0;
};

/// Outcome of running `trials` generated workloads against both the planned
/// capacity and a fixed baseline capacity.
struct PlanEvaluation {
  Category category = Category::kShrinking;
  Bytes input_bytes = 0;
  std::uint32_t trials = 0;
  std::uint64_t seed = 0;
  MemoryPlan plan;
  CapacityStats planned;
  CapacityStats baseline;
  /// 1 - plan capacity / baseline capacity; negative when the plan asks for
  /// more memory than the baseline.
  double savings_ratio = 0.0;
};

inline constexpr Bytes kDefaultBaselineCapacity = mib(2048);

PlanEvaluation evaluate_plan(Category category, Bytes input_bytes,
                             const ClusterConfig& cfg, std::uint32_t trials,
                             std::uint64_t seed,
                             Bytes baseline_capacity_bytes = kDefaultBaselineCapacity);

}  // namespace memadvisor

#endif  // MEMADVISOR_SIMULATOR_HPP
