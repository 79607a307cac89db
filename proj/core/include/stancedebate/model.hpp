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
#include <string>
#include <string_view>
#include <vector>

namespace stancedebate {

enum class Label { Rumor, NonRumor };
enum class Verdict { Fake, Real };
enum class Locale { EN, ZH };
enum class Subjectivity { Subjective, NonSubjective };
enum class AgentRole { DebaterP, DebaterN, Judge, Scorer, SubjectivityClassifier };

enum class TemplateId {
  StanceScore,
  SubjectivityProbe,
  InitSubjective,
  InitNonSubjective,
  DebateTurn,
  JudgeVerdict,
};

// Fake <-> Rumor, Real <-> NonRumor.
Label label_from_verdict(Verdict v) noexcept;
Verdict verdict_from_label(Label l) noexcept;

// Canonical spellings used in files and on the wire.
std::string_view to_string(Label l) noexcept;         // "rumor" / "non-rumor"
std::string_view to_string(Verdict v) noexcept;       // "Fake" / "Real"
std::string_view to_string(Locale l) noexcept;        // "EN" / "ZH"
std::string_view to_string(Subjectivity s) noexcept;  // "Subjective" / "NonSubjective"
std::string_view to_string(AgentRole r) noexcept;     // "DebaterP" ...
std::string_view to_string(TemplateId t) noexcept;    // "StanceScore" ...

std::optional<Label> parse_label(std::string_view s) noexcept;
std::optional<Verdict> parse_verdict(std::string_view s) noexcept;
std::optional<Locale> parse_locale(std::string_view s) noexcept;  // case-insensitive
std::optional<Subjectivity> parse_subjectivity(std::string_view s) noexcept;
std::optional<AgentRole> parse_agent_role(std::string_view s) noexcept;
std::optional<TemplateId> parse_template_id(std::string_view s) noexcept;

/// The source post whose veracity is assessed.
class Claim {
 public:
  /// Throws ContractError when `text` is blank.
  Claim(std::string id, std::string text, std::optional<Label> label = std::nullopt,
        Locale locale = Locale::EN);

  const std::string& id() const noexcept { return id_; }
  const std::string& text() const noexcept { return text_; }
  const std::optional<Label>& label() const noexcept { return label_; }
  Locale locale() const noexcept { return locale_; }

  friend bool operator==(const Claim&, const Claim&) = default;

 private:
  std::string id_;
  std::string text_;
  std::optional<Label> label_;
  Locale locale_;
};

/// A reply to the claim, posted `delay_seconds` after it.
class Comment {
 public:
  /// Throws ContractError on blank text or a negative / non-finite delay.
  Comment(std::string text, double delay_seconds);

  const std::string& text() const noexcept { return text_; }
  double delay() const noexcept { return delay_; }

  friend bool operator==(const Comment&, const Comment&) = default;

 private:
  std::string text_;
  double delay_;
};

/// A claim with its comments in ascending delay order (stable on ties).
class Thread {
 public:
  Thread(Claim claim, std::vector<Comment> comments);

  const Claim& claim() const noexcept { return claim_; }
  const std::vector<Comment>& comments() const noexcept { return comments_; }

  friend bool operator==(const Thread&, const Thread&) = default;

 private:
  Claim claim_;
  std::vector<Comment> comments_;
};

struct ScoredComment {
  Comment comment;
  double score = 0.0;  // in [-1, 1]
  std::string rationale;

  friend bool operator==(const ScoredComment&, const ScoredComment&) = default;
};

/// How the two debaters' comment sets were produced.
enum class SplitMode {
  Stance,       // signed top-k of scorer output
  RandomSplit,  // seeded random sample cut in half, no scoring
};

std::string_view to_string(SplitMode m) noexcept;
std::optional<SplitMode> parse_split_mode(std::string_view s) noexcept;

/// Supporting set P and opposing set N.
///
/// In `SplitMode::Stance`: support scores are > 0 sorted descending, oppose
/// scores are < 0 sorted ascending, and each side holds at most k entries.
/// In `SplitMode::RandomSplit` the sign constraints do not apply and every
/// score is 0.
struct StanceSets {
  std::vector<ScoredComment> support;
  std::vector<ScoredComment> oppose;
  std::size_t k = 1;
  SplitMode mode = SplitMode::Stance;

  friend bool operator==(const StanceSets&, const StanceSets&) = default;
};

struct Opinion {
  AgentRole agent = AgentRole::DebaterP;
  int round = 0;  // 0 = initial opinion
  std::string raw_text;
  Verdict verdict = Verdict::Real;
  TemplateId template_id = TemplateId::DebateTurn;
  std::string prompt_digest;  // sha256 of the rendered user prompt

  friend bool operator==(const Opinion&, const Opinion&) = default;
};

struct ClaimFailure {
  std::string stage;  // "stance", "subjectivity", "initial", "debate", "judge"
  std::string reason;

  friend bool operator==(const ClaimFailure&, const ClaimFailure&) = default;
};

/// Everything produced while detecting a single claim.
///
/// When `failure` is set the transcript is partial: it holds whatever was
/// produced before the abort and `final_verdict` is empty.
struct DebateTranscript {
  std::string claim_id;
  std::optional<Label> gold;
  Subjectivity subjectivity = Subjectivity::NonSubjective;
  bool subjectivity_forced = false;
  StanceSets stance_sets;
  std::vector<Opinion> opinions;
  bool consensus = false;
  std::optional<Opinion> judge_opinion;
  std::optional<Verdict> final_verdict;
  int rounds_run = 0;
  std::string ablation;  // "Full Model", "w/o Debate", ...
  std::optional<ClaimFailure> failure;

  bool aborted() const noexcept { return failure.has_value(); }

  friend bool operator==(const DebateTranscript&, const DebateTranscript&) = default;
};

}  // namespace stancedebate
