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

#include "memadvisor/classifier.hpp"

#include <algorithm>
#include <cctype>

namespace memadvisor {

std::string to_string(Category c) {
  switch (c) {
    case Category::kShrinking: return "shrinking";
    case Category::kMedium: return "medium";
    case Category::kExpandingMedium: return "expanding-medium";
    case Category::kExpandingRapid: return "expanding-rapid";
  }
  throw std::invalid_argument("unknown category");
}

std::string display_name(Category c) {
  switch (c) {
    case Category::kShrinking: return "Shrinking";
    case Category::kMedium: return "Medium";
    case Category::kExpandingMedium: return "Expanding.Medium";
    case Category::kExpandingRapid: return "Expanding.Rapid";
  }
  throw std::invalid_argument("unknown category");
}

Category category_from_string(const std::string& name) {
  std::string s;
  s.reserve(name.size());
  for (unsigned char c : name) s.push_back(static_cast<char>(std::tolower(c)));
  if (s == "shrinking") return Category::kShrinking;
  if (s == "medium") return Category::kMedium;
  if (s == "expanding-medium" || s == "expanding.medium") return Category::kExpandingMedium;
  if (s == "expanding-rapid" || s == "expanding.rapid") return Category::kExpandingRapid;
  throw std::invalid_argument(
      "unknown category '" + name +
      "' (expected shrinking | medium | expanding-medium | expanding-rapid)");
}

Category classify(double alpha_mean, std::optional<double> inc_shuf) {
  if (!(alpha_mean >= 0.0))
    throw std::invalid_argument("data expansion ratio must be non-negative");
  if (alpha_mean <= 0.5) return Category::kShrinking;
  if (alpha_mean < 1.0) return Category::kMedium;
  if (!inc_shuf.has_value())
    throw InsufficientRunsError(
        "data expansion ratio >= 1 but the growth rate is unknown; add a "
        "second profiling run to subdivide the expanding class");
  return *inc_shuf >= 2.0 ? Category::kExpandingRapid : Category::kExpandingMedium;
}

int expansion_factor(Category c) {
  switch (c) {
    case Category::kExpandingRapid: return 4;
    case Category::kExpandingMedium: return 3;
    case Category::kMedium: return 2;
    case Category::kShrinking: return 1;
  }
  throw std::invalid_argument("unknown category");
}

ClassificationResult classify_profile(const ProfileSet& ps) {
  ExpansionMetrics m = compute_metrics(ps);
  ClassificationResult result;
  result.alpha_mean = m.alpha_mean;
  result.inc_shuf = m.inc_shuf;
  result.category = classify(m.alpha_mean, m.inc_shuf);
  result.factor_shuf = expansion_factor(result.category);
  return result;
}

}  // namespace memadvisor
