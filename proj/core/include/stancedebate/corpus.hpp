// Copyright 2026 The stancedebate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <span>
#include <string>
#include <vector>

#include "stancedebate/gateway.hpp"
#include "stancedebate/model.hpp"

namespace stancedebate {

// One line of a corpus file:
//   {"claim_id": "t1", "claim_text": "...", "label": "rumor" | "non-rumor",
//    "locale": "EN" | "ZH", "comments": [{"text": "...", "delay_s": 60}]}

struct CorpusComment {
  std::string text;
  double delay_s = 0.0;

  friend bool operator==(const CorpusComment&, const CorpusComment&) = default;
};

struct CorpusRecord {
  std::string claim_id;
  std::string claim_text;
  std::string label;
  std::string locale = "EN";
  std::vector<CorpusComment> comments;

  friend bool operator==(const CorpusRecord&, const CorpusRecord&) = default;
};

struct LineError {
  std::size_t line_no = 0;  // 1-based
  std::string reason;
};

struct CorpusLoad {
  std::vector<Thread> threads;
  std::vector<LineError> errors;

  std::size_t loaded() const noexcept { return threads.size(); }
  std::size_t skipped() const noexcept { return errors.size(); }
};

/// Reads a JSONL corpus. Lines that fail validation are skipped and listed
/// in CorpusLoad::errors; blank lines are ignored. Throws IoError when the
/// file cannot be opened.
CorpusLoad load_corpus(const std::filesystem::path& path);
CorpusLoad parse_corpus(std::istream& in);

/// Throws SchemaError.
CorpusRecord record_from_json(const nlohmann::json& doc);
Thread thread_from_record(const CorpusRecord& record);

nlohmann::json record_to_json(const CorpusRecord& record);

/// Throws ContractError when the thread's claim has no label.
CorpusRecord record_from_thread(const Thread& thread);

void write_records(std::ostream& out, std::span<const CorpusRecord> records);
void write_corpus(std::ostream& out, std::span<const Thread> threads);

/// JSONL of {"line_no", "reason"}.
void write_error_report(std::ostream& out, std::span<const LineError> errors);

/// The first min(n, |comments|) comments by delay.
Thread truncate_by_count(const Thread& thread, std::size_t n);

/// Deterministic synthetic corpus. Claims alternate rumor / non-rumor
/// (ceil(n/2) rumors) and come in subjective and factual pairs; every
/// comment carries one planted stance phrase. Throws ContractError when
/// n_claims == 0.
std::vector<CorpusRecord> synth_fixtures(std::uint64_t seed, std::size_t n_claims);

/// Scripted rules that act as a perfect oracle for `records` produced by
/// synth_fixtures: planted phrases get fixed scores, "Honestly I think"
/// claims read as subjective, debaters and judge answer the gold label.
/// Every third claim has DebaterN dissent so the judge path is exercised.
std::vector<ScriptRule> synth_oracle_rules(std::span<const CorpusRecord> records);

}  // namespace stancedebate
