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
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "stancedebate/gateway.hpp"
#include "stancedebate/model.hpp"

namespace stancedebate {

inline constexpr std::string_view kUnparseableRationale = "unparseable";
inline constexpr std::string_view kScoreFormatReminder =
    "Output only the JSON object in the format {\"Reason\": \"\", \"Score\": \"\"}.";

struct StanceConfig {
  std::size_t k = 20;  // per side
  int score_parse_retries = 2;
  TemplateId template_id = TemplateId::StanceScore;

  /// Throws ConfigError unless k >= 1, retries >= 0 and the template is
  /// StanceScore.
  void validate() const;
};

struct ParsedScore {
  double score = 0.0;  // clamped to [-1, 1]
  std::string reason;
};

/// Reads the first JSON object in `reply` that parses, and takes its "Score"
/// (number or numeric string) and "Reason" fields. Returns nullopt when no
/// object parses or the score is missing / non-numeric.
std::optional<ParsedScore> parse_score_reply(std::string_view reply);

/// Asks the scorer for one comment's stance toward the claim. A reply that
/// never parses, even after `score_parse_retries` reminders, yields score 0
/// with rationale "unparseable". Gateway errors propagate.
ScoredComment score_comment(Gateway& gateway, const Claim& claim, const Comment& comment,
                            const StanceConfig& cfg, Locale locale);

inline ScoredComment score_comment(Gateway& gateway, const Claim& claim,
                                   const Comment& comment, const StanceConfig& cfg) {
  return score_comment(gateway, claim, comment, cfg, claim.locale());
}

/// Signed top-k split. Support holds the k highest positive scores
/// (descending), oppose the k most negative (ascending); zero scores are
/// dropped. Equal scores order by earlier delay, then input position.
/// Throws ContractError when k == 0.
StanceSets separate_stances(std::span<const ScoredComment> scored, std::size_t k);

}  // namespace stancedebate
