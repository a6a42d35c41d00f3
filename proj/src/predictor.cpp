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

#include "memadvisor/predictor.hpp"

#include <algorithm>
#include <stdexcept>

namespace memadvisor {

void validate(const ClusterConfig& cfg) {
  if (cfg.block_size_bytes == 0)
    throw std::invalid_argument("block size must be positive");
  if (cfg.tasks_per_executor == 0)
    throw std::invalid_argument("tasks per executor must be at least 1");
  if (cfg.parallelism == 0)
    throw std::invalid_argument("parallelism must be at least 1");
  if (cfg.user_memory_fraction.den == 0 ||
      cfg.user_memory_fraction.num >= cfg.user_memory_fraction.den)
    throw std::invalid_argument("user memory fraction must lie in [0, 1)");
}

Bytes predict_shuffle(Bytes input_bytes, int factor_shuf) {
  if (input_bytes == 0) throw std::invalid_argument("input size must be positive");
  if (factor_shuf < 1 || factor_shuf > 4)
    throw std::invalid_argument("expansion factor must be 1..4");
  return checked_mul(input_bytes, static_cast<Bytes>(factor_shuf));
}

std::uint64_t executors_needed(Bytes input_bytes, const ClusterConfig& cfg) {
  validate(cfg);
  if (input_bytes == 0) throw std::invalid_argument("input size must be positive");
  u128 per_executor = static_cast<u128>(cfg.tasks_per_executor) * cfg.block_size_bytes;
  return ceil_div_u128(input_bytes, per_executor);
}

Bytes mem_first_stage(Bytes input_bytes, const ClusterConfig& cfg) {
  validate(cfg);
  if (input_bytes == 0) throw std::invalid_argument("input size must be positive");
  // The first stage holds one block per concurrent task, but never more than
  // the input itself: the task count is the real-valued quotient input/block.
  u128 full_load = static_cast<u128>(cfg.tasks_per_executor) * cfg.block_size_bytes;
  return full_load < input_bytes ? static_cast<Bytes>(full_load) : input_bytes;
}

Bytes mem_other_stages(Bytes input_bytes, Bytes shuffle_bytes,
                       const ClusterConfig& cfg) {
  validate(cfg);
  if (input_bytes == 0) throw std::invalid_argument("input size must be positive");
  std::uint64_t num_ex = executors_needed(input_bytes, cfg);
  std::uint32_t held_tasks = std::min(cfg.tasks_per_executor, cfg.parallelism);

  // input/num_ex * beta + shuffle/parallelism * held_tasks, summed as one
  // exact fraction over num_ex * parallelism and rounded up once.
  u128 numerator = 0;
  if (cfg.cache_input) numerator += static_cast<u128>(input_bytes) * cfg.parallelism;
  numerator += static_cast<u128>(shuffle_bytes) * held_tasks * num_ex;
  u128 denominator = static_cast<u128>(num_ex) * cfg.parallelism;
  return ceil_div_u128(numerator, denominator);
}

MemoryPlan plan_for_factor(int factor_shuf, Bytes input_bytes,
                           const ClusterConfig& cfg) {
  validate(cfg);
  if (input_bytes == 0) throw std::invalid_argument("input size must be positive");
  if (factor_shuf < 1 || factor_shuf > 4)
    throw std::invalid_argument("expansion factor must be 1..4");

  MemoryPlan p;
  p.reserved_bytes = cfg.reserved_memory_bytes;
  p.predicted_shuffle_bytes = predict_shuffle(input_bytes, factor_shuf);
  p.num_executors = executors_needed(input_bytes, cfg);
  p.mem_first_stage_bytes = mem_first_stage(input_bytes, cfg);
  p.mem_other_stages_bytes =
      mem_other_stages(input_bytes, p.predicted_shuffle_bytes, cfg);
  p.mem_spark_bytes = std::max(p.mem_first_stage_bytes, p.mem_other_stages_bytes);

  // Scale the Spark-managed demand up to the full above-reserved heap:
  // spark / (1 - user fraction), rounded up. With the default 1/4 user share
  // this is the 4/3 scaling.
  std::uint64_t spark_num = cfg.user_memory_fraction.den;
  std::uint64_t spark_den = cfg.user_memory_fraction.den - cfg.user_memory_fraction.num;
  Bytes above_reserved =
      ceil_div_u128(static_cast<u128>(p.mem_spark_bytes) * spark_num, spark_den);

  // Floor: even a degenerate plan must leave room to start an executor.
  above_reserved = std::max(above_reserved, kMiB);

  p.capacity_bytes = checked_add(above_reserved, p.reserved_bytes);
  p.user_memory_bytes = p.capacity_bytes - p.reserved_bytes - p.mem_spark_bytes;
  return p;
}

MemoryPlan plan(Category category, Bytes input_bytes, const ClusterConfig& cfg) {
  return plan_for_factor(expansion_factor(category), input_bytes, cfg);
}

MemoryPlan plan(const ClassificationResult& result, Bytes input_bytes,
                const ClusterConfig& cfg) {
  return plan_for_factor(result.factor_shuf, input_bytes, cfg);
}

}  // namespace memadvisor
