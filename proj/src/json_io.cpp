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

#include "memadvisor/json_io.hpp"

namespace memadvisor {

Json to_json(const ClassificationResult& r) {
  Json j{{"category", to_string(r.category)},
         {"alpha_mean", r.alpha_mean},
         {"inc_shuf", nullptr},
         {"factor_shuf", r.factor_shuf}};
  if (r.inc_shuf) j["inc_shuf"] = *r.inc_shuf;
  return j;
}

Json to_json(const ValidationReport& r) {
  return Json{{"runs", r.run_count},
              {"alpha_computable", r.alpha_computable},
              {"inc_computable", r.inc_computable},
              {"warnings", r.warnings}};
}

Json to_json(const MemoryPlan& p) {
  return Json{{"num_executors", p.num_executors},
              {"predicted_shuffle_bytes", p.predicted_shuffle_bytes},
              {"mem_first_stage_bytes", p.mem_first_stage_bytes},
              {"mem_other_stages_bytes", p.mem_other_stages_bytes},
              {"mem_spark_bytes", p.mem_spark_bytes},
              {"user_memory_bytes", p.user_memory_bytes},
              {"reserved_bytes", p.reserved_bytes},
              {"capacity_bytes", p.capacity_bytes},
              {"capacity_mb", to_mib_ceil(p.capacity_bytes)}};
}

Json to_json(const KbEntry& e) {
  Json j{{"workload_id", e.workload_id},
         {"category", to_string(e.classification.category)},
         {"alpha_mean", e.classification.alpha_mean},
         {"inc_shuf", nullptr},
         {"factor_shuf", e.classification.factor_shuf},
         {"profile_digest", e.profile_digest},
         {"created_at", e.created_at}};
  if (e.classification.inc_shuf) j["inc_shuf"] = *e.classification.inc_shuf;
  return j;
}

Json to_json(const SimResult& r) {
  Json timeline = Json::array();
  for (const auto& point : r.timeline) {
    timeline.push_back({{"stage", point.stage_index},
                        {"occupancy_bytes", point.occupancy_bytes}});
  }
  return Json{{"peak_executor_bytes", r.peak_executor_bytes},
              {"spilled_bytes", r.spilled_bytes},
              {"oom", r.oom},
              {"headroom_bytes", r.headroom_bytes},
              {"spark_share_bytes", r.spark_share_bytes},
              {"timeline", std::move(timeline)}};
}

namespace {

Json to_json(const CapacityStats& s) {
  return Json{{"capacity_bytes", s.capacity_bytes},
              {"capacity_mb", to_mib_ceil(s.capacity_bytes)},
              {"oom_rate", s.oom_rate},
              {"mean_waste_ratio", s.mean_waste_ratio},
              {"mean_spilled_bytes", s.mean_spilled_bytes}};
}

}  // namespace

Json to_json(const PlanEvaluation& e) {
  return Json{{"category", to_string(e.category)},
              {"input_bytes", e.input_bytes},
              {"trials", e.trials},
              {"seed", e.seed},
              {"plan", to_json(e.plan)},
              {"planned", to_json(e.planned)},
              {"baseline", to_json(e.baseline)},
              {"savings_ratio", e.savings_ratio}};
}

ClassificationResult classification_from_json(const Json& j) {
  ClassificationResult r;
  r.category = category_from_string(j.at("category").get<std::string>());
  r.alpha_mean = j.at("alpha_mean").get<double>();
  if (!j.at("inc_shuf").is_null()) r.inc_shuf = j.at("inc_shuf").get<double>();
  r.factor_shuf = j.at("factor_shuf").get<int>();
  return r;
}

KbEntry kb_entry_from_json(const Json& j) {
  KbEntry e;
  e.workload_id = j.at("workload_id").get<std::string>();
  e.classification = classification_from_json(j);
  e.profile_digest = j.at("profile_digest").get<std::string>();
  e.created_at = j.at("created_at").get<std::int64_t>();
  return e;
}

}  // namespace memadvisor
