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

#ifndef MEMADVISOR_JSON_IO_HPP
#define MEMADVISOR_JSON_IO_HPP

#include <json.hpp>

#include "memadvisor/classifier.hpp"
#include "memadvisor/ingest.hpp"
#include "memadvisor/knowledge_base.hpp"
#include "memadvisor/predictor.hpp"
#include "memadvisor/simulator.hpp"

// JSON views of the domain types, shared by the knowledge base store, the
// CLI reports, and the tests. Key order follows the documented formats.

namespace memadvisor {

using Json = nlohmann::ordered_json;

Json to_json(const ClassificationResult& r);
Json to_json(const ValidationReport& r);
Json to_json(const MemoryPlan& p);
Json to_json(const KbEntry& e);
Json to_json(const SimResult& r);
Json to_json(const PlanEvaluation& e);

ClassificationResult classification_from_json(const Json& j);
KbEntry kb_entry_from_json(const Json& j);

}  // namespace memadvisor

#endif  // MEMADVISOR_JSON_IO_HPP
