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

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "stancedebate/agent.hpp"
#include "stancedebate/gateway.hpp"
#include "stancedebate/model.hpp"

namespace stancedebate {

inline constexpr std::string_view kVerdictReminder = "Answer with exactly one word: Fake or Real.";
inline constexpr std::string_view kNoCommentsBlock = "(no comments)";

/// Last standalone, case-insensitive "fake" or "real" in `raw`. Letters,
/// digits and '_' count as word characters, so "realize" never matches.
std::optional<Verdict> find_verdict(std::string_view raw) noexcept;

/// As find_verdict, throwing VerdictUnparseable when neither word occurs.
Verdict extract_verdict(std::string_view raw);

struct SubjectivityReading {
  Subjectivity value = Subjectivity::NonSubjective;
  bool ambiguous = false;  // neither "yes" nor "no" found
};

/// "Yes" before any "No" means subjective; everything else is not.
SubjectivityReading read_subjectivity_reply(std::string_view reply) noexcept;

/// Runs the subjectivity probe. Ambiguous replies fall back to
/// NonSubjective and log a warning.
Subjectivity classify_subjectivity(Gateway& gateway, const Claim& claim, Locale locale);

inline Subjectivity classify_subjectivity(Gateway& gateway, const Claim& claim) {
  return classify_subjectivity(gateway, claim, claim.locale());
}

/// "1. first\n2. second..." in the given order, or "(no comments)".
std::string format_comment_block(std::span<const ScoredComment> comments);

TemplateId initial_template_for(Subjectivity subjectivity) noexcept;

/// Appends `prompt` to the agent's history, generates, and extracts a
/// verdict. An unparseable reply earns one re-prompt with kVerdictReminder;
/// a second failure throws VerdictUnparseable. Every exchange stays in the
/// history.
Opinion ask_for_verdict(Gateway& gateway, AgentState& agent, const std::string& prompt,
                        int round, TemplateId template_id);

/// Round-0 opinion of a debater seeded with its stance set. `agent` must be
/// a fresh DebaterP or DebaterN state.
Opinion generate_initial_opinion(Gateway& gateway, AgentState& agent, const Claim& claim,
                                 std::span<const ScoredComment> comments,
                                 Subjectivity subjectivity);

}  // namespace stancedebate
