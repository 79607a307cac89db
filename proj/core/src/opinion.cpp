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

#include "stancedebate/opinion.hpp"

#include <cctype>

#include "stancedebate/digest.hpp"
#include "stancedebate/errors.hpp"
#include "stancedebate/log.hpp"
#include "stancedebate/prompts.hpp"

namespace stancedebate {
namespace {

bool is_word_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && (std::isalnum(u) || c == '_');
}

bool word_at(std::string_view text, std::size_t pos, std::string_view lower_word) {
  if (pos + lower_word.size() > text.size()) return false;
  for (std::size_t i = 0; i < lower_word.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(text[pos + i])) != lower_word[i]) return false;
  }
  const bool left_ok = pos == 0 || !is_word_char(text[pos - 1]);
  const std::size_t end = pos + lower_word.size();
  const bool right_ok = end == text.size() || !is_word_char(text[end]);
  return left_ok && right_ok;
}

}  // namespace

AgentState::AgentState(AgentRole role, Locale locale) : role_(role), locale_(locale) {
  history_.push_back({Speaker::System, TemplateSet::builtin().preamble(role, locale)});
}

void AgentState::append(Speaker speaker, std::string text) {
  history_.push_back({speaker, std::move(text)});
}

std::optional<Verdict> find_verdict(std::string_view raw) noexcept {
  for (std::size_t i = raw.size(); i-- > 0;) {
    if (word_at(raw, i, "fake")) return Verdict::Fake;
    if (word_at(raw, i, "real")) return Verdict::Real;
  }
  return std::nullopt;
}

Verdict extract_verdict(std::string_view raw) {
  if (auto v = find_verdict(raw)) return *v;
  throw VerdictUnparseable("no Fake/Real verdict in generation", std::string(raw));
}

SubjectivityReading read_subjectivity_reply(std::string_view reply) noexcept {
  for (std::size_t i = 0; i < reply.size(); ++i) {
    if (word_at(reply, i, "yes")) return {Subjectivity::Subjective, false};
    if (word_at(reply, i, "no")) return {Subjectivity::NonSubjective, false};
  }
  return {Subjectivity::NonSubjective, true};
}

Subjectivity classify_subjectivity(Gateway& gateway, const Claim& claim, Locale locale) {
  const auto& tpl = TemplateSet::builtin().get(TemplateId::SubjectivityProbe, locale);
  const auto result = gateway.generate(AgentRole::SubjectivityClassifier,
                                       {{Speaker::User, tpl.render({{"Claim", claim.text()}})}});
  const auto reading = read_subjectivity_reply(result.text);
  if (reading.ambiguous) {
    log_warning("claim '" + claim.id() +
                "': subjectivity reply has no Yes/No, treating as non-subjective");
  }
  return reading.value;
}

std::string format_comment_block(std::span<const ScoredComment> comments) {
  if (comments.empty()) return std::string(kNoCommentsBlock);
  std::string out;
  for (std::size_t i = 0; i < comments.size(); ++i) {
    if (i) out += '\n';
    out += std::to_string(i + 1);
    out += ". ";
    out += comments[i].comment.text();
  }
  return out;
}

TemplateId initial_template_for(Subjectivity subjectivity) noexcept {
  return subjectivity == Subjectivity::Subjective ? TemplateId::InitSubjective
                                                  : TemplateId::InitNonSubjective;
}

Opinion ask_for_verdict(Gateway& gateway, AgentState& agent, const std::string& prompt,
                        int round, TemplateId template_id) {
  agent.append(Speaker::User, prompt);
  Opinion opinion;
  opinion.agent = agent.role();
  opinion.round = round;
  opinion.template_id = template_id;
  opinion.prompt_digest = sha256_hex(prompt);

  for (int attempt = 0; attempt < 2; ++attempt) {
    GenerationResult result = gateway.generate(agent.role(), agent.history());
    agent.append(Speaker::Assistant, result.text);
    if (auto verdict = find_verdict(result.text)) {
      opinion.raw_text = std::move(result.text);
      opinion.verdict = *verdict;
      return opinion;
    }
    if (attempt == 0) {
      agent.append(Speaker::User, std::string(kVerdictReminder));
    } else {
      throw VerdictUnparseable(std::string(to_string(agent.role())) + " round " +
                                   std::to_string(round) + ": no Fake/Real verdict after re-prompt",
                               std::move(result.text));
    }
  }
  throw Error("unreachable");
}

Opinion generate_initial_opinion(Gateway& gateway, AgentState& agent, const Claim& claim,
                                 std::span<const ScoredComment> comments,
                                 Subjectivity subjectivity) {
  if (agent.role() != AgentRole::DebaterP && agent.role() != AgentRole::DebaterN) {
    throw ContractError("initial opinions are generated for debaters only");
  }
  if (agent.history().size() != 1) {
    throw ContractError("initial opinion requires a fresh agent state");
  }
  const TemplateId id = initial_template_for(subjectivity);
  const auto& tpl = TemplateSet::builtin().get(id, agent.locale());
  const std::string prompt =
      tpl.render({{"Claim", claim.text()}, {"Comment", format_comment_block(comments)}});
  return ask_for_verdict(gateway, agent, prompt, 0, id);
}

}  // namespace stancedebate
