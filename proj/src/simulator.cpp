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

#include "memadvisor/simulator.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace memadvisor {

namespace {

std::uint64_t uniform_u64(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  // lo..hi inclusive; modulo bias is irrelevant for synthetic workloads.
  if (lo > hi) throw std::invalid_argument("empty sampling range");
  std::uint64_t span = hi - lo;
  if (span == std::numeric_limits<std::uint64_t>::max()) return rng();
  return lo + rng() % (span + 1);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Peak-stage shuffle bounds, in whole bytes, for each category band.
// Integer endpoints keep band membership exact after sampling.
void band_bounds(Category c, Bytes input, Bytes& lo, Bytes& hi) {
  switch (c) {
    case Category::kShrinking:  // (0, 0.5]
      lo = 1;
      hi = input / 2;
      return;
    case Category::kMedium:  // (0.5, 1)
      lo = input / 2 + 1;
      hi = input - 1;
      return;
    case Category::kExpandingMedium:  // [1, 3)
      lo = input;
      hi = 3 * input - 1;
      return;
    case Category::kExpandingRapid:  // [3, 6]
      lo = 3 * input;
      hi = 6 * input;
      return;
  }
  throw std::invalid_argument("unknown category");
}

}  // namespace

SimWorkloadSpec generate(Category category, Bytes input_bytes,
                         std::uint32_t stage_count, std::uint64_t seed) {
  if (stage_count < 2)
    throw std::invalid_argument("a workload needs a loading stage and at least one shuffle stage");
  if (input_bytes < 4)
    throw std::invalid_argument("input below 4 bytes cannot express every ratio band");
  if (input_bytes > std::numeric_limits<Bytes>::max() / 6)
    throw std::overflow_error("input too large for the rapid band");

  SimWorkloadSpec spec;
  spec.category = category;
  spec.input_bytes = input_bytes;
  spec.stage_count = stage_count;
  spec.seed = seed;

  Bytes lo = 0, hi = 0;
  band_bounds(category, input_bytes, lo, hi);

  std::mt19937_64 rng(seed);
  Bytes peak = uniform_u64(rng, lo, hi);
  std::uint32_t peak_stage =
      static_cast<std::uint32_t>(uniform_u64(rng, 1, stage_count - 1));

  spec.per_stage_shuffle_bytes.assign(stage_count, 0);  // stage 0 stays 0
  for (std::uint32_t i = 1; i < stage_count; ++i) {
    spec.per_stage_shuffle_bytes[i] =
        i == peak_stage ? peak : uniform_u64(rng, 0, peak);
  }
  return spec;
}

SimResult simulate(const SimWorkloadSpec& spec, Bytes capacity_bytes,
                   const ClusterConfig& cfg) {
  validate(cfg);
  if (capacity_bytes <= cfg.reserved_memory_bytes)
    throw std::invalid_argument("capacity must exceed the reserved region");
  if (spec.input_bytes == 0 || spec.per_stage_shuffle_bytes.empty())
    throw std::invalid_argument("malformed workload spec");

  const Bytes input = spec.input_bytes;
  const Bytes block = cfg.block_size_bytes;
  const std::uint64_t tasks = cfg.tasks_per_executor;
  const std::uint64_t par = cfg.parallelism;
  const std::uint64_t held_tasks = std::min<std::uint64_t>(tasks, par);

  // Spark-managed share of the heap above the reserved region (the rest is
  // user memory). Floored, so the share is never optimistic.
  const Bytes above_reserved = capacity_bytes - cfg.reserved_memory_bytes;
  const std::uint64_t den = cfg.user_memory_fraction.den;
  const std::uint64_t spark_part = den - cfg.user_memory_fraction.num;
  const Bytes share =
      static_cast<Bytes>(static_cast<u128>(above_reserved) * spark_part / den);

  const std::uint64_t num_ex =
      static_cast<std::uint64_t>((static_cast<u128>(input) + static_cast<u128>(tasks) * block - 1) /
                                 (static_cast<u128>(tasks) * block));
  // Cached input is pinned per executor; loading buffers and shuffle
  // intermediates are flexible (they spill or evict instead of failing).
  const Bytes pinned = cfg.cache_input ? (input + num_ex - 1) / num_ex : 0;

  SimResult r;
  r.spark_share_bytes = share;
  r.timeline.reserve(spec.per_stage_shuffle_bytes.size());

  for (std::uint32_t i = 0; i < spec.per_stage_shuffle_bytes.size(); ++i) {
    Bytes stage_pinned = 0;
    u128 demand = 0;
    if (i == 0) {
      std::uint64_t loading_tasks =
          std::min<std::uint64_t>(tasks, (input + block - 1) / block);
      demand = static_cast<u128>(loading_tasks) * block;
    } else {
      u128 numerator = 0;
      if (cfg.cache_input) numerator += static_cast<u128>(input) * par;
      numerator += static_cast<u128>(spec.per_stage_shuffle_bytes[i]) * held_tasks * num_ex;
      u128 denominator = static_cast<u128>(num_ex) * par;
      demand = (numerator + denominator - 1) / denominator;
      stage_pinned = pinned;
    }
    if (demand > std::numeric_limits<Bytes>::max())
      throw std::overflow_error("stage demand exceeds 64-bit range");
    Bytes stage_demand = static_cast<Bytes>(demand);

    Bytes occupancy;
    if (stage_pinned > share) {
      // Pinned cache cannot be evicted or spilled: the executor dies here.
      r.oom = true;
      occupancy = stage_pinned;
      r.spilled_bytes += stage_demand - stage_pinned;
    } else {
      occupancy = std::min(stage_demand, share);
      r.spilled_bytes += stage_demand - occupancy;
    }
    r.peak_executor_bytes = std::max(r.peak_executor_bytes, occupancy);
    r.timeline.push_back({i, occupancy});
  }

  r.headroom_bytes = static_cast<std::int64_t>(share) -
                     static_cast<std::int64_t>(r.peak_executor_bytes);
  return r;
}

PlanEvaluation evaluate_plan(Category category, Bytes input_bytes,
                             const ClusterConfig& cfg, std::uint32_t trials,
                             std::uint64_t seed, Bytes baseline_capacity_bytes) {
  if (trials == 0) throw std::invalid_argument("at least one trial is required");

  PlanEvaluation ev;
  ev.category = category;
  ev.input_bytes = input_bytes;
  ev.trials = trials;
  ev.seed = seed;
  ev.plan = plan(category, input_bytes, cfg);
  ev.planned.capacity_bytes = ev.plan.capacity_bytes;
  ev.baseline.capacity_bytes = baseline_capacity_bytes;

  std::uint64_t plan_oom = 0, base_oom = 0;
  double plan_waste = 0.0, base_waste = 0.0;
  double plan_spill = 0.0, base_spill = 0.0;

  for (std::uint32_t t = 0; t < trials; ++t) {
    std::uint64_t trial_seed = splitmix64(seed + t);
    auto stage_count = static_cast<std::uint32_t>(2 + trial_seed % 7);  // 2..8
    SimWorkloadSpec spec = generate(category, input_bytes, stage_count, trial_seed);

    SimResult with_plan = simulate(spec, ev.plan.capacity_bytes, cfg);
    SimResult with_base = simulate(spec, baseline_capacity_bytes, cfg);

    plan_oom += with_plan.oom ? 1 : 0;
    base_oom += with_base.oom ? 1 : 0;
    plan_waste += static_cast<double>(with_plan.headroom_bytes) /
                  static_cast<double>(with_plan.spark_share_bytes);
    base_waste += static_cast<double>(with_base.headroom_bytes) /
                  static_cast<double>(with_base.spark_share_bytes);
    plan_spill += static_cast<double>(with_plan.spilled_bytes);
    base_spill += static_cast<double>(with_base.spilled_bytes);
  }

  ev.planned.oom_rate = static_cast<double>(plan_oom) / trials;
  ev.planned.mean_waste_ratio = plan_waste / trials;
  ev.planned.mean_spilled_bytes = plan_spill / trials;
  ev.baseline.oom_rate = static_cast<double>(base_oom) / trials;
  ev.baseline.mean_waste_ratio = base_waste / trials;
  ev.baseline.mean_spilled_bytes = base_spill / trials;
  ev.savings_ratio = 1.0 - static_cast<double>(ev.plan.capacity_bytes) /
                               static_cast<double>(baseline_capacity_bytes);
  return ev;
}

}  // namespace memadvisor
