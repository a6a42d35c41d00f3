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

#include "memadvisor/knowledge_base.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "memadvisor/ingest.hpp"
#include "memadvisor/json_io.hpp"

namespace memadvisor {

namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = kFnvOffset;
  for (unsigned char c : data) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

// Exclusive advisory lock on `<store>.lock`, released on scope exit.
class StoreLock {
 public:
  explicit StoreLock(const std::filesystem::path& store_path) {
    lock_path_ = store_path;
    lock_path_ += ".lock";
    fd_ = ::open(lock_path_.c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
    if (fd_ < 0)
      throw std::runtime_error("cannot open lock file " + lock_path_.string() +
                               ": " + std::strerror(errno));
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
      int err = errno;
      ::close(fd_);
      fd_ = -1;
      if (err == EWOULDBLOCK)
        throw StoreLockedError("knowledge base " + store_path.string() +
                               " is locked by another writer");
      throw std::runtime_error("cannot lock " + lock_path_.string() + ": " +
                               std::strerror(err));
    }
  }

  ~StoreLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }

  StoreLock(const StoreLock&) = delete;
  StoreLock& operator=(const StoreLock&) = delete;

 private:
  std::filesystem::path lock_path_;
  int fd_ = -1;
};

void check_entry(const KbEntry& entry) {
  if (entry.workload_id.empty())
    throw std::invalid_argument("workload id must be non-empty");
  int expected = expansion_factor(entry.classification.category);
  if (entry.classification.factor_shuf != expected) {
    throw std::invalid_argument(
        "expansion factor " + std::to_string(entry.classification.factor_shuf) +
        " does not match category " + to_string(entry.classification.category) +
        " (expected " + std::to_string(expected) + ")");
  }
}

std::vector<KbEntry> load(const std::filesystem::path& path) {
  std::vector<KbEntry> entries;
  std::ifstream in(path);
  if (!in) return entries;  // absent store reads as empty
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    try {
      entries.push_back(kb_entry_from_json(Json::parse(line)));
    } catch (const std::exception& e) {
      throw std::runtime_error("corrupt knowledge base " + path.string() +
                               " at line " + std::to_string(line_no) + ": " +
                               e.what());
    }
  }
  return entries;
}

void store(const std::filesystem::path& path, const std::vector<KbEntry>& entries) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    for (const KbEntry& e : entries) out << to_json(e).dump() << '\n';
    out.flush();
    if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  // Atomic replacement keeps lock-free readers consistent.
  std::filesystem::rename(tmp, path);
}

}  // namespace

std::string profile_digest(const ProfileSet& ps) {
  std::uint64_t h = fnv1a64(to_jsonl(ps));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

KnowledgeBase::KnowledgeBase(std::filesystem::path path) : path_(std::move(path)) {
  if (path_.empty()) throw std::invalid_argument("knowledge base path is empty");
}

KnowledgeBase::PutResult KnowledgeBase::put(const KbEntry& entry) {
  check_entry(entry);
  StoreLock lock(path_);
  std::vector<KbEntry> entries = load(path_);
  PutResult result;
  auto it = std::find_if(entries.begin(), entries.end(), [&](const KbEntry& e) {
    return e.workload_id == entry.workload_id;
  });
  if (it != entries.end()) {
    *it = entry;
    result.replaced = true;
  } else {
    entries.push_back(entry);
  }
  std::sort(entries.begin(), entries.end(), [](const KbEntry& a, const KbEntry& b) {
    return a.workload_id < b.workload_id;
  });
  store(path_, entries);
  return result;
}

std::optional<KbEntry> KnowledgeBase::get(const std::string& workload_id) const {
  for (KbEntry& e : load(path_)) {
    if (e.workload_id == workload_id) return std::move(e);
  }
  return std::nullopt;
}

std::vector<KbEntry> KnowledgeBase::list() const {
  std::vector<KbEntry> entries = load(path_);
  std::sort(entries.begin(), entries.end(), [](const KbEntry& a, const KbEntry& b) {
    return a.workload_id < b.workload_id;
  });
  return entries;
}

}  // namespace memadvisor
