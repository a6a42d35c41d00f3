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

#ifndef MEMADVISOR_PREDICTOR_HPP
#define MEMADVISOR_PREDICTOR_HPP

#include <cstdint>

#include "memadvisor/bytes.hpp"
#include "memadvisor/classifier.hpp"

namespace memadvisor {

/// Exact fraction, kept rational so capacity math never picks up float error.
struct Ratio {
  std::uint64_t num = 1;
  std::uint64_t den = 4;

  bool operator==(const Ratio&) const = default;
};

/// Deployment parameters of the target cluster.
///
/// Defaults mirror a small commodity deployment: 128 MiB blocks, four
/// concurrent tasks per executor (spark.executor.cores), shuffle parallelism
/// of four (spark.default.parallelism), cached input, 300 MiB reserved.
struct ClusterConfig {
  Bytes block_size_bytes = mib(128);
  std::uint32_t tasks_per_executor = 4;
  std::uint32_t parallelism = 4;
  bool cache_input = true;
  Bytes reserved_memory_bytes = mib(300);
  Ratio user_memory_fraction{1, 4};  // share of the heap above reserved

  bool operator==(const ClusterConfig&) const = default;
};

/// Throws std::invalid_argument when a field is out of domain
/// (zero block size, zero tasks/parallelism, fraction not in [0,1)).
void validate(const ClusterConfig& cfg);

/// Predicted per-executor capacity with its full breakdown. Invariants:
///   mem_spark_bytes  = max(mem_first_stage_bytes, mem_other_stages_bytes)
///   capacity_bytes   = ceil(mem_spark_bytes / (1 - user fraction)) + reserved
///   user_memory_bytes = capacity_bytes - reserved_bytes - mem_spark_bytes
struct MemoryPlan {
  std::uint64_t num_executors = 1;
  Bytes predicted_shuffle_bytes = 0;
  Bytes mem_first_stage_bytes = 0;
  Bytes mem_other_stages_bytes = 0;
  Bytes mem_spark_bytes = 0;
  Bytes user_memory_bytes = 0;
  Bytes reserved_bytes = 0;
  Bytes capacity_bytes = 0;

  bool operator==(const MemoryPlan&) const = default;
};

/// Shuffle size forecast: expansion factor times input size, exact.
Bytes predict_shuffle(Bytes input_bytes, int factor_shuf);

/// Executors required to hold the input: ceil(input / (tasks * block)).
std::uint64_t executors_needed(Bytes input_bytes, const ClusterConfig& cfg);

/// First-stage (data loading) demand. The task count of the first stage is
/// the real-valued quotient input/block, so this never exceeds the input:
/// min(tasks * block, input).
Bytes mem_first_stage(Bytes input_bytes, const ClusterConfig& cfg);

/// Later-stage demand: the per-executor share of cached input (when caching
/// is on) plus the shuffle partitions held by the executor's concurrent
/// tasks. Exact rational intermediates, rounded up to whole bytes once.
Bytes mem_other_stages(Bytes input_bytes, Bytes shuffle_bytes,
                       const ClusterConfig& cfg);

/// Full capacity plan for a workload category at a target input size.
MemoryPlan plan(Category category, Bytes input_bytes, const ClusterConfig& cfg);

MemoryPlan plan(const ClassificationResult& result, Bytes input_bytes,
                const ClusterConfig& cfg);

/// As above but with the expansion factor given directly (must be 1..4).
MemoryPlan plan_for_factor(int factor_shuf, Bytes input_bytes,
                           const ClusterConfig& cfg);

}  // namespace memadvisor

#endif  // MEMADVISOR_PREDICTOR_HPP
