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

#include "memadvisor/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace memadvisor {

Bytes stage_shuffle(const StageRecord& s) {
  return checked_add(s.shuffle_read_bytes, s.shuffle_write_bytes);
}

Bytes run_shuffle(const RunProfile& r) {
  if (r.stages.empty()) throw std::invalid_argument("run has no stages");
  Bytes best = 0;
  for (const StageRecord& s : r.stages) best = std::max(best, stage_shuffle(s));
  return best;
}

double run_alpha(const RunProfile& r) {
  if (r.input_bytes == 0) throw std::invalid_argument("input size must be positive");
  return static_cast<double>(run_shuffle(r)) / static_cast<double>(r.input_bytes);
}

double mean_alpha(const ProfileSet& ps) {
  if (ps.runs.empty()) throw std::invalid_argument("profile set has no runs");
  double sum = 0.0;
  for (const RunProfile& r : ps.runs) sum += run_alpha(r);
  return sum / static_cast<double>(ps.runs.size());
}

double inc_rate(const ProfileSet& ps) {
  if (ps.runs.size() < 2)
    throw std::invalid_argument(
        "growth rate needs at least two profiling runs at distinct input sizes");
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < ps.runs.size(); ++i) {
    const RunProfile& a = ps.runs[i];
    const RunProfile& b = ps.runs[i + 1];
    if (b.input_bytes <= a.input_bytes)
      throw std::invalid_argument("input sizes must be strictly ascending");
    // Signed differences: a shrinking shuffle gives a negative rate and is
    // kept in the mean unclamped.
    double dshuf = static_cast<double>(run_shuffle(b)) - static_cast<double>(run_shuffle(a));
    double dinput = static_cast<double>(b.input_bytes - a.input_bytes);
    sum += dshuf / dinput;
  }
  return sum / static_cast<double>(ps.runs.size() - 1);
}

ExpansionMetrics compute_metrics(const ProfileSet& ps) {
  if (ps.runs.empty()) throw std::invalid_argument("profile set has no runs");
  ExpansionMetrics m;
  m.per_run_shuffle_bytes.reserve(ps.runs.size());
  m.per_run_alpha.reserve(ps.runs.size());
  for (const RunProfile& r : ps.runs) {
    m.per_run_shuffle_bytes.push_back(run_shuffle(r));
    m.per_run_alpha.push_back(run_alpha(r));
  }
  double sum = 0.0;
  for (double a : m.per_run_alpha) sum += a;
  m.alpha_mean = sum / static_cast<double>(m.per_run_alpha.size());
  if (ps.runs.size() >= 2) m.inc_shuf = inc_rate(ps);
  return m;
}

}  // namespace memadvisor
