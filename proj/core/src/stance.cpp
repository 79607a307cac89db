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

#include "stancedebate/stance.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <vector>

#include "stancedebate/errors.hpp"
#include "stancedebate/prompts.hpp"

namespace stancedebate {
namespace {

// End (one past the closing brace) of the balanced object starting at
// text[open], honouring JSON string escapes.
std::optional<std::size_t> object_end(std::string_view text, std::size_t open) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = open; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}') {
      if (--depth == 0) return i + 1;
    }
  }
  return std::nullopt;
}

std::optional<double> numeric(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string()) return std::nullopt;
  std::string_view s = v.get_ref<const std::string&>();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return out;
}

}  // namespace

void StanceConfig::validate() const {
  if (k < 1) throw ConfigError("stance k must be >= 1");
  if (score_parse_retries < 0) throw ConfigError("score_parse_retries must be >= 0");
  if (template_id != TemplateId::StanceScore) {
    throw ConfigError("the scorer template must be StanceScore");
  }
}

std::optional<ParsedScore> parse_score_reply(std::string_view reply) {
  for (std::size_t open = reply.find('{'); open != std::string_view::npos;
       open = reply.find('{', open + 1)) {
    const auto end = object_end(reply, open);
    if (!end) continue;
    auto doc = nlohmann::json::parse(reply.substr(open, *end - open), nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) continue;

    if (!doc.contains("Score")) return std::nullopt;
    const auto score = numeric(doc["Score"]);
    if (!score || !std::isfinite(*score)) return std::nullopt;
    ParsedScore parsed;
    parsed.score = std::clamp(*score, -1.0, 1.0);
    if (doc.contains("Reason") && doc["Reason"].is_string()) {
      parsed.reason = doc["Reason"].get<std::string>();
    }
    return parsed;
  }
  return std::nullopt;
}

ScoredComment score_comment(Gateway& gateway, const Claim& claim, const Comment& comment,
                            const StanceConfig& cfg, Locale locale) {
  const auto& tpl = TemplateSet::builtin().get(cfg.template_id, locale);
  std::vector<Message> messages{
      {Speaker::User, tpl.render({{"Claim", claim.text()}, {"Comment", comment.text()}})}};

  for (int attempt = 0;; ++attempt) {
    GenerationResult result = gateway.generate(AgentRole::Scorer, messages);
    if (auto parsed = parse_score_reply(result.text)) {
      return ScoredComment{comment, parsed->score, std::move(parsed->reason)};
    }
    if (attempt >= cfg.score_parse_retries) break;
    messages.push_back({Speaker::Assistant, std::move(result.text)});
    messages.push_back({Speaker::User, std::string(kScoreFormatReminder)});
  }
  return ScoredComment{comment, 0.0, std::string(kUnparseableRationale)};
}

StanceSets separate_stances(std::span<const ScoredComment> scored, std::size_t k) {
  if (k == 0) throw ContractError("k must be >= 1");

  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
  for (std::size_t i = 0; i < scored.size(); ++i) {
    if (scored[i].score > 0.0) pos.push_back(i);
    if (scored[i].score < 0.0) neg.push_back(i);
  }

  // Strength is score for P and -score for N; ties go to the earlier comment.
  auto take = [&](std::vector<std::size_t>& idx, double sign) {
    const auto before = [&](std::size_t a, std::size_t b) {
      const double sa = sign * scored[a].score;
      const double sb = sign * scored[b].score;
      if (sa != sb) return sa > sb;
      const double da = scored[a].comment.delay();
      const double db = scored[b].comment.delay();
      if (da != db) return da < db;
      return a < b;
    };
    const std::size_t n = std::min(k, idx.size());
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n), idx.end(), before);
    std::vector<ScoredComment> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(scored[idx[i]]);
    return out;
  };

  StanceSets sets;
  sets.k = k;
  sets.mode = SplitMode::Stance;
  sets.support = take(pos, 1.0);
  sets.oppose = take(neg, -1.0);
  return sets;
}

}  // namespace stancedebate
