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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "stancedebate/agent.hpp"
#include "stancedebate/gateway.hpp"
#include "stancedebate/model.hpp"
#include "stancedebate/stance.hpp"

namespace stancedebate {

/// Order in which the two debaters are asked within a round. Every order
/// yields the same transcript because both prompts are built from the
/// previous round only.
enum class RoundOrder { Concurrent, DebaterPFirst, DebaterNFirst };

struct DebateConfig {
  int max_rounds = 2;
  bool early_exit_on_consensus = false;

  // Ablations.
  bool skip_stance_separation = false;    // "w/o Stance": seeded random split of <= 2k comments
  bool force_subjective_prompt = false;   // "w/o Non-Sub"
  bool force_nonsubjective_prompt = false;  // "w/o Sub"
  bool skip_debate = false;               // "w/o Debate": one agent, round 0 only

  std::uint64_t seed = 0;
  std::optional<Locale> locale_override;
  RoundOrder round_order = RoundOrder::Concurrent;

  /// Throws ConfigError on negative rounds or both force_* flags set.
  void validate() const;

  /// "Full Model" or the ablation names joined by " + ".
  std::string ablation_label() const;
};

/// One simultaneous exchange: each debater answers the other's
/// round-(j-1) reply. Both histories get the new prompt and reply appended.
std::pair<Opinion, Opinion> run_debate_round(Gateway& gateway, AgentState& state_p,
                                             AgentState& state_n, const Opinion& prev_p,
                                             const Opinion& prev_n, int round,
                                             RoundOrder order = RoundOrder::Concurrent);

/// Equality of extracted verdicts. Both opinions must be from the same round.
bool check_consensus(const Opinion& op_p, const Opinion& op_n);

/// Arbitrates a disagreement from the two final-round replies. Throws
/// ContractError if the debaters already agree.
Opinion judge_verdict(Gateway& gateway, const Claim& claim, const Opinion& last_p,
                      const Opinion& last_n, Locale locale);

inline Opinion judge_verdict(Gateway& gateway, const Claim& claim, const Opinion& last_p,
                             const Opinion& last_n) {
  return judge_verdict(gateway, claim, last_p, last_n, claim.locale());
}

/// Seeded sample of up to 2k comments, first half to support and second
/// half to oppose, all with score 0. Depends only on (comments, k, seed,
/// claim_id).
StanceSets random_split(std::span<const Comment> comments, std::size_t k, std::uint64_t seed,
                        std::string_view claim_id);

/// Full pipeline for one claim: score and separate stances, classify
/// subjectivity, seed both debaters, run the rounds, and call the judge only
/// on disagreement. Failures never escape; they are recorded in
/// DebateTranscript::failure together with the partial transcript.
DebateTranscript detect(Gateway& gateway, const Thread& thread, const DebateConfig& cfg,
                        const StanceConfig& stance_cfg);

}  // namespace stancedebate
