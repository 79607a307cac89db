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

#include "stancedebate/model.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <utility>

#include "stancedebate/errors.hpp"

namespace stancedebate {
namespace {

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
           return std::tolower(x) == std::tolower(y);
         });
}

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::pair<Enum, std::string_view>, N>& table,
                           std::string_view s) {
  for (const auto& [value, name] : table) {
    if (name == s) return value;
  }
  return std::nullopt;
}

template <typename Enum, std::size_t N>
std::string_view name_of(const std::array<std::pair<Enum, std::string_view>, N>& table,
                         Enum value) {
  for (const auto& [v, name] : table) {
    if (v == value) return name;
  }
  return "?";
}

constexpr std::array<std::pair<Label, std::string_view>, 2> kLabels{{
    {Label::Rumor, "rumor"},
    {Label::NonRumor, "non-rumor"},
}};
constexpr std::array<std::pair<Verdict, std::string_view>, 2> kVerdicts{{
    {Verdict::Fake, "Fake"},
    {Verdict::Real, "Real"},
}};
constexpr std::array<std::pair<Locale, std::string_view>, 2> kLocales{{
    {Locale::EN, "EN"},
    {Locale::ZH, "ZH"},
}};
constexpr std::array<std::pair<Subjectivity, std::string_view>, 2> kSubjectivity{{
    {Subjectivity::Subjective, "Subjective"},
    {Subjectivity::NonSubjective, "NonSubjective"},
}};
constexpr std::array<std::pair<AgentRole, std::string_view>, 5> kRoles{{
    {AgentRole::DebaterP, "DebaterP"},
    {AgentRole::DebaterN, "DebaterN"},
    {AgentRole::Judge, "Judge"},
    {AgentRole::Scorer, "Scorer"},
    {AgentRole::SubjectivityClassifier, "SubjectivityClassifier"},
}};
constexpr std::array<std::pair<TemplateId, std::string_view>, 6> kTemplates{{
    {TemplateId::StanceScore, "StanceScore"},
    {TemplateId::SubjectivityProbe, "SubjectivityProbe"},
    {TemplateId::InitSubjective, "InitSubjective"},
    {TemplateId::InitNonSubjective, "InitNonSubjective"},
    {TemplateId::DebateTurn, "DebateTurn"},
    {TemplateId::JudgeVerdict, "JudgeVerdict"},
}};
constexpr std::array<std::pair<SplitMode, std::string_view>, 2> kSplitModes{{
    {SplitMode::Stance, "stance"},
    {SplitMode::RandomSplit, "random-split"},
}};

}  // namespace

Label label_from_verdict(Verdict v) noexcept {
  return v == Verdict::Fake ? Label::Rumor : Label::NonRumor;
}

Verdict verdict_from_label(Label l) noexcept {
  return l == Label::Rumor ? Verdict::Fake : Verdict::Real;
}

std::string_view to_string(Label l) noexcept { return name_of(kLabels, l); }
std::string_view to_string(Verdict v) noexcept { return name_of(kVerdicts, v); }
std::string_view to_string(Locale l) noexcept { return name_of(kLocales, l); }
std::string_view to_string(Subjectivity s) noexcept { return name_of(kSubjectivity, s); }
std::string_view to_string(AgentRole r) noexcept { return name_of(kRoles, r); }
std::string_view to_string(TemplateId t) noexcept { return name_of(kTemplates, t); }
std::string_view to_string(SplitMode m) noexcept { return name_of(kSplitModes, m); }

std::optional<Label> parse_label(std::string_view s) noexcept { return lookup(kLabels, s); }
std::optional<Verdict> parse_verdict(std::string_view s) noexcept { return lookup(kVerdicts, s); }
std::optional<Subjectivity> parse_subjectivity(std::string_view s) noexcept {
  return lookup(kSubjectivity, s);
}
std::optional<AgentRole> parse_agent_role(std::string_view s) noexcept {
  return lookup(kRoles, s);
}
std::optional<TemplateId> parse_template_id(std::string_view s) noexcept {
  return lookup(kTemplates, s);
}
std::optional<SplitMode> parse_split_mode(std::string_view s) noexcept {
  return lookup(kSplitModes, s);
}

std::optional<Locale> parse_locale(std::string_view s) noexcept {
  for (const auto& [value, name] : kLocales) {
    if (iequals(name, s)) return value;
  }
  return std::nullopt;
}

Claim::Claim(std::string id, std::string text, std::optional<Label> label, Locale locale)
    : id_(std::move(id)), text_(std::move(text)), label_(label), locale_(locale) {
  if (is_blank(text_)) throw ContractError("claim '" + id_ + "' has empty text");
}

Comment::Comment(std::string text, double delay_seconds)
    : text_(std::move(text)), delay_(delay_seconds) {
  if (is_blank(text_)) throw ContractError("comment text is empty");
  if (!std::isfinite(delay_) || delay_ < 0.0) {
    throw ContractError("comment delay must be a non-negative number of seconds");
  }
}

Thread::Thread(Claim claim, std::vector<Comment> comments)
    : claim_(std::move(claim)), comments_(std::move(comments)) {
  std::stable_sort(comments_.begin(), comments_.end(),
                   [](const Comment& a, const Comment& b) { return a.delay() < b.delay(); });
}

}  // namespace stancedebate
