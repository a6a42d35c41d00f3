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

#ifndef MEMADVISOR_CLASSIFIER_HPP
#define MEMADVISOR_CLASSIFIER_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "memadvisor/metrics.hpp"
#include "memadvisor/profile.hpp"

namespace memadvisor {

/// The four workload classes, ordered by how aggressively shuffle data grows
/// relative to the input.
enum class Category {
  kShrinking,
  kMedium,
  kExpandingMedium,
  kExpandingRapid,
};

/// Canonical machine name ("expanding-rapid", ...). Stable: used in JSON
/// reports, the knowledge base, and CLI flags.
std::string to_string(Category c);

/// Display name ("Expanding.Rapid", ...).
std::string display_name(Category c);

/// Accepts the machine name or the display name, case-insensitively.
/// Throws std::invalid_argument for anything else.
Category category_from_string(const std::string& name);

/// An expanding workload cannot be subdivided from a single profiling run:
/// the growth rate needs at least two observations.
class InsufficientRunsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Category selection:
///   alpha <= 0.5            -> Shrinking
///   0.5 < alpha < 1         -> Medium
///   alpha >= 1, inc >= 2    -> Expanding.Rapid
///   alpha >= 1, inc < 2     -> Expanding.Medium
/// Boundaries are inclusive exactly as written. The growth rate is consulted
/// only for alpha >= 1; if it is absent there, InsufficientRunsError is thrown.
Category classify(double alpha_mean, std::optional<double> inc_shuf);

/// Fixed per-category data expansion factor: 4 / 3 / 2 / 1.
int expansion_factor(Category c);

struct ClassificationResult {
  Category category = Category::kShrinking;
  double alpha_mean = 0.0;
  std::optional<double> inc_shuf;
  int factor_shuf = 1;

  bool operator==(const ClassificationResult&) const = default;
};

/// Full pipeline over a profile set: metrics, category, expansion factor.
ClassificationResult classify_profile(const ProfileSet& ps);

}  // namespace memadvisor

#endif  // MEMADVISOR_CLASSIFIER_HPP
