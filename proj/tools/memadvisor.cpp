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

// memadvisor: classify stage-based analytic workloads by their shuffle data
// expansion and advise the per-executor memory capacity they need.

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "memadvisor/ingest.hpp"
#include "memadvisor/json_io.hpp"
#include "memadvisor/knowledge_base.hpp"
#include "memadvisor/predictor.hpp"
#include "memadvisor/simulator.hpp"

namespace {

using namespace memadvisor;

std::string fmt_bytes(Bytes b) {
  char buf[64];
  if (b % kMiB == 0) {
    std::snprintf(buf, sizeof buf, "%llu MiB (%llu bytes)",
                  static_cast<unsigned long long>(b / kMiB),
                  static_cast<unsigned long long>(b));
  } else {
    std::snprintf(buf, sizeof buf, "%.2f MiB (%llu bytes)", to_mib(b),
                  static_cast<unsigned long long>(b));
  }
  return buf;
}

struct ConfigFlags {
  std::uint64_t block_mb = 128;
  std::uint32_t tasks_per_executor = 4;
  std::uint32_t parallelism = 4;
  bool cache_input = true;
  std::uint64_t reserved_mb = 300;

  ClusterConfig to_config() const {
    ClusterConfig cfg;
    cfg.block_size_bytes = mib(block_mb);
    cfg.tasks_per_executor = tasks_per_executor;
    cfg.parallelism = parallelism;
    cfg.cache_input = cache_input;
    cfg.reserved_memory_bytes = mib(reserved_mb);
    validate(cfg);
    return cfg;
  }

  Json to_json() const {
    return Json{{"block_mb", block_mb},
                {"tasks_per_executor", tasks_per_executor},
                {"parallelism", parallelism},
                {"cache_input", cache_input},
                {"reserved_mb", reserved_mb}};
  }
};

void add_config_flags(CLI::App* cmd, ConfigFlags& f) {
  cmd->add_option("--block-mb", f.block_mb, "Data block size in MiB (loading unit of first-stage tasks)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tasks-per-executor", f.tasks_per_executor,
                  "Concurrent tasks per executor (spark.executor.cores)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--parallelism", f.parallelism,
                  "Total shuffle task count (spark.default.parallelism)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--cache-input,!--no-cache-input", f.cache_input,
                "Whether the input data is cached in executor memory")
      ->capture_default_str();
  cmd->add_option("--reserved-mb", f.reserved_mb,
                  "Reserved memory for runtime internals, MiB")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

void emit(bool as_json, const Json& report, const std::string& human) {
  if (as_json) {
    std::cout << report.dump(2) << '\n';
  } else {
    std::cout << human;
  }
}

std::string require_kb_path(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  const char* env = std::getenv("MEMADVISOR_KB");
  if (env != nullptr && env[0] != '\0') return env;
  throw std::runtime_error(
      "knowledge base path required: pass --kb PATH or set MEMADVISOR_KB");
}

KbEntry make_entry(const ProfileSet& ps, const ClassificationResult& result) {
  KbEntry entry;
  entry.workload_id = ps.workload_id;
  entry.classification = result;
  entry.profile_digest = profile_digest(ps);
  entry.created_at = static_cast<std::int64_t>(std::time(nullptr));
  return entry;
}

std::string describe_classification(const ProfileSet& ps,
                                     const ClassificationResult& r) {
  std::string out;
  out += "workload:    " + ps.workload_id + "\n";
  out += "runs:        " + std::to_string(ps.runs.size()) + "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "alpha mean:  %g\n", r.alpha_mean);
  out += buf;
  if (r.inc_shuf) {
    std::snprintf(buf, sizeof buf, "inc rate:    %g\n", *r.inc_shuf);
    out += buf;
  } else {
    out += "inc rate:    n/a (single run)\n";
  }
  out += "category:    " + display_name(r.category) + "\n";
  out += "factor:      " + std::to_string(r.factor_shuf) + "\n";
  return out;
}

std::string describe_plan(const MemoryPlan& p) {
  std::string out;
  out += "executors:          " + std::to_string(p.num_executors) + "\n";
  out += "predicted shuffle:  " + fmt_bytes(p.predicted_shuffle_bytes) + "\n";
  out += "first stage:        " + fmt_bytes(p.mem_first_stage_bytes) + "\n";
  out += "other stages:       " + fmt_bytes(p.mem_other_stages_bytes) + "\n";
  out += "spark memory:       " + fmt_bytes(p.mem_spark_bytes) + "\n";
  out += "user memory:        " + fmt_bytes(p.user_memory_bytes) + "\n";
  out += "reserved:           " + fmt_bytes(p.reserved_bytes) + "\n";
  out += "capacity:           " + std::to_string(to_mib_ceil(p.capacity_bytes)) +
         " MiB (" + std::to_string(p.capacity_bytes) +
         " bytes) <- spark.executor.memory\n";
  return out;
}

int cmd_validate(const std::string& profile_path, bool as_json) {
  ProfileSet ps = parse_profiles_file(profile_path);
  ValidationReport vr = validate_for_classification(ps);

  Json result = to_json(vr);
  result["workload_id"] = ps.workload_id;
  Json report{{"command", "validate"},
              {"inputs", Json{{"profile", profile_path}}},
              {"result", std::move(result)},
              {"warnings", vr.warnings}};

  std::string human;
  human += "workload:         " + ps.workload_id + "\n";
  human += "runs:             " + std::to_string(vr.run_count) + "\n";
  human += std::string("alpha computable: ") + (vr.alpha_computable ? "yes" : "no") + "\n";
  human += std::string("inc computable:   ") + (vr.inc_computable ? "yes" : "no") + "\n";
  for (const std::string& w : vr.warnings) human += "warning: " + w + "\n";
  emit(as_json, report, human);
  return 0;
}

int cmd_classify(const std::string& profile_path, const std::string& kb_flag,
                 bool as_json) {
  ProfileSet ps = parse_profiles_file(profile_path);
  ValidationReport vr = validate_for_classification(ps);
  ClassificationResult result = classify_profile(ps);

  Json result_json = to_json(result);
  result_json["workload_id"] = ps.workload_id;
  result_json["runs"] = ps.runs.size();
  Json report{{"command", "classify"},
              {"inputs", Json{{"profile", profile_path}}},
              {"result", std::move(result_json)},
              {"warnings", vr.warnings}};
  std::string human = describe_classification(ps, result);

  // Record the workload when a knowledge base is configured (flag or env).
  std::string kb_path = kb_flag;
  if (kb_path.empty()) {
    const char* env = std::getenv("MEMADVISOR_KB");
    if (env != nullptr) kb_path = env;
  }
  if (!kb_path.empty()) {
    KnowledgeBase kb{kb_path};
    KbEntry entry = make_entry(ps, result);
    auto put = kb.put(entry);
    report["inputs"]["kb"] = kb_path;
    report["kb"] = Json{{"stored", true}, {"replaced", put.replaced}};
    human += "stored:      " + kb_path +
             (put.replaced ? " (replaced previous entry)\n" : "\n");
  }

  emit(as_json, report, human);
  return 0;
}

int cmd_predict(const std::string& category_flag, const std::string& workload_id,
                std::uint64_t input_mb, const ConfigFlags& flags,
                const std::string& kb_flag, bool as_json) {
  ClusterConfig cfg = flags.to_config();
  Bytes input = mib(input_mb);

  int factor = 0;
  std::string origin;
  if (!category_flag.empty()) {
    Category c = category_from_string(category_flag);
    factor = expansion_factor(c);
    origin = display_name(c);
  } else if (!workload_id.empty()) {
    KnowledgeBase kb{require_kb_path(kb_flag)};
    std::optional<KbEntry> entry = kb.get(workload_id);
    if (!entry) {
      std::string known;
      for (const KbEntry& e : kb.list())
        known += (known.empty() ? "" : ", ") + e.workload_id;
      throw std::runtime_error("unknown workload '" + workload_id +
                               "'; known ids: " + (known.empty() ? "(none)" : known));
    }
    factor = entry->classification.factor_shuf;
    origin = workload_id + ", " + display_name(entry->classification.category);
  } else {
    throw std::runtime_error("pass --category or --workload-id");
  }

  MemoryPlan p = plan_for_factor(factor, input, cfg);

  Json report{{"command", "predict"},
              {"inputs", Json{{"category", category_flag.empty() ? Json() : Json(category_flag)},
                              {"workload_id", workload_id.empty() ? Json() : Json(workload_id)},
                              {"input_mb", input_mb},
                              {"config", flags.to_json()}}},
              {"result", to_json(p)},
              {"warnings", Json::array()}};

  std::string human = "workload:           " + origin + " (factor " +
                      std::to_string(factor) + ")\n" +
                      "input:              " + fmt_bytes(input) + "\n" +
                      describe_plan(p);
  emit(as_json, report, human);
  return 0;
}

int cmd_kb_put(const std::string& profile_path, const std::string& kb_flag,
               bool as_json) {
  ProfileSet ps = parse_profiles_file(profile_path);
  ClassificationResult result = classify_profile(ps);
  KnowledgeBase kb{require_kb_path(kb_flag)};
  KbEntry entry = make_entry(ps, result);
  auto put = kb.put(entry);

  Json report{{"command", "kb put"},
              {"inputs", Json{{"profile", profile_path}, {"kb", kb.path().string()}}},
              {"result", to_json(entry)},
              {"warnings", Json::array()}};
  std::string human = describe_classification(ps, result);
  human += std::string("replaced:    ") + (put.replaced ? "yes" : "no") + "\n";
  emit(as_json, report, human);
  return 0;
}

int cmd_kb_get(const std::string& workload_id, const std::string& kb_flag,
               bool as_json) {
  KnowledgeBase kb{require_kb_path(kb_flag)};
  std::optional<KbEntry> entry = kb.get(workload_id);
  if (!entry)
    throw std::runtime_error("workload '" + workload_id +
                             "' not found in knowledge base");

  Json report{{"command", "kb get"},
              {"inputs", Json{{"workload_id", workload_id}, {"kb", kb.path().string()}}},
              {"result", to_json(*entry)},
              {"warnings", Json::array()}};
  char buf[96];
  std::snprintf(buf, sizeof buf, "%-14s %-17s %2d  alpha=%g\n",
                entry->workload_id.c_str(),
                display_name(entry->classification.category).c_str(),
                entry->classification.factor_shuf, entry->classification.alpha_mean);
  emit(as_json, report, buf);
  return 0;
}

int cmd_kb_list(const std::string& kb_flag, bool as_json) {
  KnowledgeBase kb{require_kb_path(kb_flag)};
  std::vector<KbEntry> entries = kb.list();

  Json result = Json::array();
  for (const KbEntry& e : entries) result.push_back(to_json(e));
  Json report{{"command", "kb list"},
              {"inputs", Json{{"kb", kb.path().string()}}},
              {"result", std::move(result)},
              {"warnings", Json::array()}};

  std::string human;
  if (entries.empty()) {
    human = "(empty)\n";
  } else {
    for (const KbEntry& e : entries) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%-14s %-17s %2d  alpha=%g\n",
                    e.workload_id.c_str(),
                    display_name(e.classification.category).c_str(),
                    e.classification.factor_shuf, e.classification.alpha_mean);
      human += buf;
    }
  }
  emit(as_json, report, human);
  return 0;
}

int cmd_simulate(const std::string& category_flag, std::uint64_t input_mb,
                 std::uint64_t capacity_mb, std::uint32_t stages,
                 std::uint64_t seed, const ConfigFlags& flags, bool as_json) {
  ClusterConfig cfg = flags.to_config();
  Category c = category_from_string(category_flag);
  SimWorkloadSpec spec = generate(c, mib(input_mb), stages, seed);
  SimResult r = simulate(spec, mib(capacity_mb), cfg);

  Json spec_json{{"category", to_string(c)},
                 {"input_bytes", spec.input_bytes},
                 {"stage_count", spec.stage_count},
                 {"per_stage_shuffle_bytes", spec.per_stage_shuffle_bytes},
                 {"seed", spec.seed}};
  Json report{{"command", "simulate"},
              {"inputs", Json{{"category", category_flag},
                              {"input_mb", input_mb},
                              {"capacity_mb", capacity_mb},
                              {"stages", stages},
                              {"seed", seed},
                              {"config", flags.to_json()}}},
              {"result", Json{{"spec", std::move(spec_json)}, {"sim", to_json(r)}}},
              {"warnings", Json::array()}};

  std::string human;
  human += "category:     " + display_name(c) + "\n";
  human += "peak:         " + fmt_bytes(r.peak_executor_bytes) + "\n";
  human += "spark share:  " + fmt_bytes(r.spark_share_bytes) + "\n";
  human += "spilled:      " + fmt_bytes(r.spilled_bytes) + "\n";
  human += std::string("oom:          ") + (r.oom ? "YES" : "no") + "\n";
  human += "headroom:     " + std::to_string(r.headroom_bytes) + " bytes\n";
  for (const auto& point : r.timeline) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "  stage %2u: %s\n", point.stage_index,
                  fmt_bytes(point.occupancy_bytes).c_str());
    human += buf;
  }
  emit(as_json, report, human);
  return 0;
}

int cmd_evaluate(const std::string& category_flag, std::uint64_t input_mb,
                 std::uint32_t trials, std::uint64_t seed,
                 std::uint64_t baseline_mb, const ConfigFlags& flags,
                 bool as_json) {
  ClusterConfig cfg = flags.to_config();
  Category c = category_from_string(category_flag);
  PlanEvaluation ev = evaluate_plan(c, mib(input_mb), cfg, trials, seed, mib(baseline_mb));

  Json report{{"command", "evaluate"},
              {"inputs", Json{{"category", category_flag},
                              {"input_mb", input_mb},
                              {"trials", trials},
                              {"seed", seed},
                              {"baseline_mb", baseline_mb},
                              {"config", flags.to_json()}}},
              {"result", to_json(ev)},
              {"warnings", Json::array()}};

  char buf[160];
  std::string human;
  human += "category:          " + display_name(c) + "\n";
  human += "plan capacity:     " + std::to_string(to_mib_ceil(ev.plan.capacity_bytes)) + " MiB\n";
  human += "baseline capacity: " + std::to_string(baseline_mb) + " MiB\n";
  std::snprintf(buf, sizeof buf, "savings vs baseline: %.1f%%\n", ev.savings_ratio * 100.0);
  human += buf;
  std::snprintf(buf, sizeof buf,
                "plan:     oom rate %.3f, mean waste %.3f, mean spill %.0f bytes\n",
                ev.planned.oom_rate, ev.planned.mean_waste_ratio,
                ev.planned.mean_spilled_bytes);
  human += buf;
  std::snprintf(buf, sizeof buf,
                "baseline: oom rate %.3f, mean waste %.3f, mean spill %.0f bytes\n",
                ev.baseline.oom_rate, ev.baseline.mean_waste_ratio,
                ev.baseline.mean_spilled_bytes);
  human += buf;
  emit(as_json, report, human);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "memadvisor: classify stage-based analytic workloads by shuffle data "
      "expansion and predict per-executor memory capacity "
      "(spark.executor.memory advice)"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  bool as_json = false;
  app.add_flag("--json", as_json, "Emit a single machine-readable JSON report on stdout");

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "Check a profile file and report what is computable");
  std::string validate_profile;
  validate_cmd->add_option("profile", validate_profile, "Profile file (one JSON run per line)")->required();

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "Classify a workload from its profile file");
  std::string classify_profile, classify_kb;
  classify_cmd->add_option("profile", classify_profile, "Profile file (one JSON run per line)")->required();
  classify_cmd->add_option("--kb", classify_kb, "Knowledge base to record the result in (or MEMADVISOR_KB)");

  // predict
  auto* predict_cmd = app.add_subcommand("predict", "Predict the per-executor memory capacity");
  std::string predict_category, predict_workload, predict_kb;
  std::uint64_t predict_input_mb = 0;
  ConfigFlags predict_flags;
  predict_cmd->add_option("--category", predict_category,
                          "Workload category: shrinking | medium | expanding-medium | expanding-rapid");
  predict_cmd->add_option("--workload-id", predict_workload, "Resolve the category from the knowledge base");
  predict_cmd->add_option("--input-mb", predict_input_mb, "Target input data size, MiB")
      ->required()
      ->check(CLI::PositiveNumber);
  predict_cmd->add_option("--kb", predict_kb, "Knowledge base path (or MEMADVISOR_KB)");
  add_config_flags(predict_cmd, predict_flags);

  // kb
  auto* kb_cmd = app.add_subcommand("kb", "Manage the knowledge base of classified workloads");
  kb_cmd->require_subcommand(1);
  std::string kb_path;
  kb_cmd->add_option("--kb", kb_path, "Knowledge base path (or MEMADVISOR_KB)");
  auto* kb_put = kb_cmd->add_subcommand("put", "Classify a profile and store the result");
  std::string kb_put_profile;
  kb_put->add_option("profile", kb_put_profile, "Profile file")->required();
  auto* kb_get = kb_cmd->add_subcommand("get", "Look up one workload");
  std::string kb_get_id;
  kb_get->add_option("workload_id", kb_get_id, "Workload id")->required();
  auto* kb_list = kb_cmd->add_subcommand("list", "List all stored workloads");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Generate one synthetic workload and replay it against a capacity");
  std::string sim_category;
  std::uint64_t sim_input_mb = 0, sim_capacity_mb = 0, sim_seed = 42;
  std::uint32_t sim_stages = 4;
  ConfigFlags sim_flags;
  sim_cmd->add_option("--category", sim_category, "Workload category")->required();
  sim_cmd->add_option("--input-mb", sim_input_mb, "Input data size, MiB")->required()->check(CLI::PositiveNumber);
  sim_cmd->add_option("--capacity-mb", sim_capacity_mb, "Executor capacity to test, MiB")->required()->check(CLI::PositiveNumber);
  sim_cmd->add_option("--stages", sim_stages, "Stage count (>= 2)")->capture_default_str();
  sim_cmd->add_option("--seed", sim_seed, "Generator seed")->capture_default_str();
  add_config_flags(sim_cmd, sim_flags);

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "Stress the predicted capacity with generated workloads vs a baseline");
  std::string eval_category;
  std::uint64_t eval_input_mb = 0, eval_seed = 42, eval_baseline_mb = 2048;
  std::uint32_t eval_trials = 100;
  ConfigFlags eval_flags;
  eval_cmd->add_option("--category", eval_category, "Workload category")->required();
  eval_cmd->add_option("--input-mb", eval_input_mb, "Target input data size, MiB")->required()->check(CLI::PositiveNumber);
  eval_cmd->add_option("--trials", eval_trials, "Generated workloads per capacity")->capture_default_str()->check(CLI::PositiveNumber);
  eval_cmd->add_option("--seed", eval_seed, "Generator seed")->capture_default_str();
  eval_cmd->add_option("--baseline-mb", eval_baseline_mb, "Baseline capacity to compare against, MiB")->capture_default_str()->check(CLI::PositiveNumber);
  add_config_flags(eval_cmd, eval_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate_cmd->parsed()) return cmd_validate(validate_profile, as_json);
    if (classify_cmd->parsed()) return cmd_classify(classify_profile, classify_kb, as_json);
    if (predict_cmd->parsed())
      return cmd_predict(predict_category, predict_workload, predict_input_mb,
                         predict_flags, predict_kb, as_json);
    if (kb_cmd->parsed()) {
      if (kb_put->parsed()) return cmd_kb_put(kb_put_profile, kb_path, as_json);
      if (kb_get->parsed()) return cmd_kb_get(kb_get_id, kb_path, as_json);
      if (kb_list->parsed()) return cmd_kb_list(kb_path, as_json);
    }
    if (sim_cmd->parsed())
      return cmd_simulate(sim_category, sim_input_mb, sim_capacity_mb, sim_stages,
                          sim_seed, sim_flags, as_json);
    if (eval_cmd->parsed())
      return cmd_evaluate(eval_category, eval_input_mb, eval_trials, eval_seed,
                          eval_baseline_mb, eval_flags, as_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
