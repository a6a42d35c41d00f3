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

#ifndef MEMADVISOR_KNOWLEDGE_BASE_HPP
#define MEMADVISOR_KNOWLEDGE_BASE_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "memadvisor/classifier.hpp"
#include "memadvisor/profile.hpp"

namespace memadvisor {

/// Content hash of a profile set (FNV-1a over the canonical serialization),
/// rendered as 16 hex digits. Lets a stored classification be traced back to
/// the exact profile it was derived from.
std::string profile_digest(const ProfileSet& ps);

/// One classified workload as persisted by the offline phase.
struct KbEntry {
  std::string workload_id;
  ClassificationResult classification;
  std::string profile_digest;
  std::int64_t created_at = 0;  // unix epoch seconds

  bool operator==(const KbEntry&) const = default;
};

/// Another writer holds the store lock.
class StoreLockedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Catalog of classified workloads, one JSON object per line in a single
/// file. Writes serialize through an exclusive advisory lock on a sibling
/// `<store>.lock` file and replace the store atomically, so readers never
/// observe a torn file. Matching is by exact workload id.
class KnowledgeBase {
 public:
  explicit KnowledgeBase(std::filesystem::path path);

  struct PutResult {
    bool replaced = false;
  };

  /// Inserts or replaces the entry with the same workload id. Throws
  /// StoreLockedError if a concurrent writer holds the lock, and
  /// std::invalid_argument if the entry violates the category/factor map.
  PutResult put(const KbEntry& entry);

  std::optional<KbEntry> get(const std::string& workload_id) const;

  /// All entries, sorted by workload id.
  std::vector<KbEntry> list() const;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace memadvisor

#endif  // MEMADVISOR_KNOWLEDGE_BASE_HPP
