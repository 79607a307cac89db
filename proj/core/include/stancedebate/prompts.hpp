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

#include <array>
#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "stancedebate/model.hpp"

namespace stancedebate {

/// Bumped whenever a shipped prompt asset changes.
inline constexpr std::string_view kPromptVersion = "1";

/// Placeholder names recognised inside template bodies, written `{Name}`.
/// Any other brace sequence is literal text.
inline constexpr std::array<std::string_view, 5> kPlaceholderNames = {
    "Claim", "Comment", "OtherAnswers", "AgentPReply", "AgentNReply"};

using PromptBindings = std::map<std::string, std::string, std::less<>>;

class PromptTemplate {
 public:
  PromptTemplate(TemplateId id, Locale locale, std::string body);

  TemplateId id() const noexcept { return id_; }
  Locale locale() const noexcept { return locale_; }
  const std::string& body() const noexcept { return body_; }

  /// Distinct placeholders in order of first appearance.
  std::vector<std::string> placeholders() const;

  /// Single-pass substitution; bound values are never rescanned. Throws
  /// ContractError when a placeholder in the body has no binding.
  std::string render(const PromptBindings& bindings) const;

  std::string digest() const;

 private:
  TemplateId id_;
  Locale locale_;
  std::string body_;
};

/// The six prompt templates plus agent preambles, in every locale.
class TemplateSet {
 public:
  /// Templates compiled into the library. Throws at first use if any asset
  /// is missing.
  static const TemplateSet& builtin();

  const PromptTemplate& get(TemplateId id, Locale locale) const;

  /// System preamble for DebaterP, DebaterN or Judge.
  const std::string& preamble(AgentRole role, Locale locale) const;

  /// {"version": ..., "EN": {"StanceScore": sha256, ...}, "ZH": {...}}
  nlohmann::json digests() const;

 private:
  TemplateSet();

  std::map<std::pair<Locale, TemplateId>, PromptTemplate> templates_;
  std::map<std::pair<Locale, AgentRole>, std::string> preambles_;
};

}  // namespace stancedebate
