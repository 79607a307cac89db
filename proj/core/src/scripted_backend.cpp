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

#include <fstream>

#include "stancedebate/digest.hpp"
#include "stancedebate/errors.hpp"
#include "stancedebate/gateway.hpp"

namespace stancedebate {

ScriptedBackend::ScriptedBackend(std::vector<ScriptRule> rules) : rules_(std::move(rules)) {
  if (rules_.empty()) throw ContractError("scripted backend needs at least one rule");
  compiled_.reserve(rules_.size());
  for (const auto& rule : rules_) {
    if (rule.match == ScriptRule::Match::Regex) {
      try {
        compiled_.emplace_back(std::regex(rule.pattern, std::regex::ECMAScript));
      } catch (const std::regex_error& e) {
        throw ContractError("invalid rule regex '" + rule.pattern + "': " + e.what());
      }
    } else {
      compiled_.emplace_back(std::nullopt);
    }
  }
}

ScriptedBackend ScriptedBackend::from_json(const nlohmann::json& doc) {
  const nlohmann::json& arr = doc.is_object() && doc.contains("rules") ? doc["rules"] : doc;
  if (!arr.is_array()) throw ConfigError("scripted rules must be an array or {\"rules\": [...]}");
  std::vector<ScriptRule> rules;
  for (const auto& item : arr) {
    if (!item.is_object() || !item.contains("response") || !item["response"].is_string()) {
      throw ConfigError("every scripted rule needs a string \"response\"");
    }
    ScriptRule rule;
    if (item.contains("contains") && item["contains"].is_string()) {
      rule.match = ScriptRule::Match::Substring;
      rule.pattern = item["contains"].get<std::string>();
    } else if (item.contains("regex") && item["regex"].is_string()) {
      rule.match = ScriptRule::Match::Regex;
      rule.pattern = item["regex"].get<std::string>();
    } else {
      throw ConfigError("scripted rule needs \"contains\" or \"regex\"");
    }
    rule.response = item["response"].get<std::string>();
    if (item.contains("role") && !item["role"].is_null()) {
      auto role = item["role"].is_string()
                      ? parse_agent_role(item["role"].get<std::string>())
                      : std::nullopt;
      if (!role) throw ConfigError("unknown role in scripted rule: " + item["role"].dump());
      rule.role = role;
    }
    rules.push_back(std::move(rule));
  }
  return ScriptedBackend(std::move(rules));
}

ScriptedBackend ScriptedBackend::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read scripted rules file " + path.string());
  auto doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("scripted rules file is not valid JSON: " + path.string());
  return from_json(doc);
}

std::optional<std::size_t> ScriptedBackend::match(const GenerationRequest& request) const {
  const std::string text = request.concatenated_text();
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const ScriptRule& rule = rules_[i];
    if (rule.role && *rule.role != request.role()) continue;
    const bool hit = compiled_[i] ? std::regex_search(text, *compiled_[i])
                                  : text.find(rule.pattern) != std::string::npos;
    if (hit) return i;
  }
  return std::nullopt;
}

BackendReply ScriptedBackend::complete(const GenerationRequest& request) {
  if (auto i = match(request)) return BackendReply{rules_[*i].response, {}};
  return BackendReply{std::string(kFallbackResponse), std::string(kNoMatchNote)};
}

std::string ScriptedBackend::digest() const { return sha256_hex(rules_to_json(rules_).dump()); }

nlohmann::json rules_to_json(std::span<const ScriptRule> rules) {
  auto arr = nlohmann::json::array();
  for (const auto& rule : rules) {
    nlohmann::json item;
    item[rule.match == ScriptRule::Match::Regex ? "regex" : "contains"] = rule.pattern;
    item["response"] = rule.response;
    if (rule.role) item["role"] = to_string(*rule.role);
    arr.push_back(std::move(item));
  }
  return nlohmann::json{{"rules", std::move(arr)}};
}

}  // namespace stancedebate
