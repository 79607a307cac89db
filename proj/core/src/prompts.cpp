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

#include "stancedebate/prompts.hpp"

#include <algorithm>
#include <string_view>

#include "prompt_assets.hpp"
#include "stancedebate/digest.hpp"
#include "stancedebate/errors.hpp"

namespace stancedebate {
namespace {

// Returns the placeholder name starting at body[pos] (which is '{'), or an
// empty view.
std::string_view placeholder_at(std::string_view body, std::size_t pos) {
  for (std::string_view name : kPlaceholderNames) {
    if (body.size() >= pos + name.size() + 2 && body.compare(pos + 1, name.size(), name) == 0 &&
        body[pos + 1 + name.size()] == '}') {
      return name;
    }
  }
  return {};
}

struct AssetName {
  std::string_view file;
  TemplateId id;
};

constexpr std::array<AssetName, 6> kTemplateFiles{{
    {"stance_score", TemplateId::StanceScore},
    {"subjectivity_probe", TemplateId::SubjectivityProbe},
    {"init_subjective", TemplateId::InitSubjective},
    {"init_nonsubjective", TemplateId::InitNonSubjective},
    {"debate_turn", TemplateId::DebateTurn},
    {"judge_verdict", TemplateId::JudgeVerdict},
}};

constexpr std::array<std::pair<std::string_view, AgentRole>, 3> kPreambleFiles{{
    {"preamble_debater_p", AgentRole::DebaterP},
    {"preamble_debater_n", AgentRole::DebaterN},
    {"preamble_judge", AgentRole::Judge},
}};

}  // namespace

PromptTemplate::PromptTemplate(TemplateId id, Locale locale, std::string body)
    : id_(id), locale_(locale), body_(std::move(body)) {}

std::vector<std::string> PromptTemplate::placeholders() const {
  std::vector<std::string> out;
  for (std::size_t pos = body_.find('{'); pos != std::string::npos;
       pos = body_.find('{', pos + 1)) {
    const auto name = placeholder_at(body_, pos);
    if (!name.empty() && std::find(out.begin(), out.end(), name) == out.end()) {
      out.emplace_back(name);
    }
  }
  return out;
}

std::string PromptTemplate::render(const PromptBindings& bindings) const {
  std::string out;
  out.reserve(body_.size() + 256);
  std::size_t pos = 0;
  while (pos < body_.size()) {
    const std::size_t brace = body_.find('{', pos);
    if (brace == std::string::npos) {
      out.append(body_, pos);
      break;
    }
    out.append(body_, pos, brace - pos);
    const auto name = placeholder_at(body_, brace);
    if (name.empty()) {
      out.push_back('{');
      pos = brace + 1;
      continue;
    }
    auto it = bindings.find(name);
    if (it == bindings.end()) {
      throw ContractError("template " + std::string(to_string(id_)) + " needs a binding for {" +
                          std::string(name) + "}");
    }
    out += it->second;
    pos = brace + name.size() + 2;
  }
  return out;
}

std::string PromptTemplate::digest() const { return sha256_hex(body_); }

TemplateSet::TemplateSet() {
  for (const auto& asset : detail::prompt_assets()) {
    const auto locale = parse_locale(asset.locale);
    if (!locale) throw Error(std::string("prompt asset with unknown locale ") + asset.locale);
    const std::string_view name = asset.name;
    for (const auto& [file, id] : kTemplateFiles) {
      if (file == name) templates_.emplace(std::pair{*locale, id}, PromptTemplate(id, *locale, asset.text));
    }
    for (const auto& [file, role] : kPreambleFiles) {
      if (file == name) preambles_.emplace(std::pair{*locale, role}, asset.text);
    }
  }
  for (Locale locale : {Locale::EN, Locale::ZH}) {
    for (const auto& [file, id] : kTemplateFiles) {
      if (!templates_.contains({locale, id})) {
        throw Error("missing prompt template " + std::string(file) + " for locale " +
                    std::string(to_string(locale)));
      }
    }
    for (const auto& [file, role] : kPreambleFiles) {
      if (!preambles_.contains({locale, role})) {
        throw Error("missing preamble " + std::string(file) + " for locale " +
                    std::string(to_string(locale)));
      }
    }
  }
}

const TemplateSet& TemplateSet::builtin() {
  static const TemplateSet set;
  return set;
}

const PromptTemplate& TemplateSet::get(TemplateId id, Locale locale) const {
  return templates_.at({locale, id});
}

const std::string& TemplateSet::preamble(AgentRole role, Locale locale) const {
  auto it = preambles_.find({locale, role});
  if (it == preambles_.end()) {
    throw ContractError("no preamble for role " + std::string(to_string(role)));
  }
  return it->second;
}

nlohmann::json TemplateSet::digests() const {
  nlohmann::json out;
  out["version"] = kPromptVersion;
  for (const auto& [key, tpl] : templates_) {
    out[std::string(to_string(key.first))][std::string(to_string(key.second))] = tpl.digest();
  }
  for (const auto& [key, text] : preambles_) {
    out[std::string(to_string(key.first))]["Preamble" + std::string(to_string(key.second))] =
        sha256_hex(text);
  }
  return out;
}

}  // namespace stancedebate
