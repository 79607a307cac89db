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

#include <array>
#include <cstdio>
#include <string_view>

#include "rng.hpp"
#include "stancedebate/corpus.hpp"
#include "stancedebate/errors.hpp"

namespace stancedebate {
namespace {

constexpr std::array<std::string_view, 10> kTopics = {
    "the new subway line",   "tap water in the capital", "the vaccine rollout",
    "the city marathon",     "the downtown bridge",      "the school reopening plan",
    "the regional power grid", "the harbor port",        "the national park",
    "the airport expansion",
};

struct PlantedStance {
  std::string_view phrase;
  std::string_view sentence;  // contains `phrase`
  std::string_view score;
  std::string_view reason;
};

constexpr std::array<PlantedStance, 5> kStances = {{
    {"confirmed by officials", "This was confirmed by officials this morning.", "0.9",
     "cites an official confirmation"},
    {"saw it with my own eyes", "I saw it with my own eyes, it is happening.", "0.5",
     "eyewitness support"},
    {"has been debunked", "This has been debunked by several outlets already.", "-0.9",
     "points to a published debunk"},
    {"sounds fishy to me", "Honestly this sounds fishy to me.", "-0.4", "expresses doubt"},
    {"lol whatever", "lol whatever", "0.0", "does not conform to common sense"},
}};

constexpr std::string_view kSubjectiveMarker = "Honestly I think";

std::string claim_tag(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "#s%05zu", i);
  return buf;
}

std::string claim_text(std::size_t i, bool rumor, bool subjective, std::string_view topic) {
  std::string text;
  if (subjective) {
    text = std::string(kSubjectiveMarker) + " " + std::string(topic) +
           (rumor ? " is a total scam and they are hiding the truth from us!!"
                  : " is the best thing to happen to this town in years.");
  } else {
    text = rumor ? "BREAKING: " + std::string(topic) +
                       " will be shut down forever starting tomorrow, insiders say."
                 : "The city council announced that " + std::string(topic) +
                       " will undergo scheduled maintenance next week.";
  }
  return text + " " + claim_tag(i);
}

}  // namespace

std::vector<CorpusRecord> synth_fixtures(std::uint64_t seed, std::size_t n_claims) {
  if (n_claims == 0) throw ContractError("synth_fixtures needs n_claims >= 1");
  if (n_claims > 99999) throw ContractError("synth_fixtures supports at most 99999 claims");
  std::mt19937_64 rng(detail::splitmix64(seed));

  std::vector<CorpusRecord> out;
  out.reserve(n_claims);
  for (std::size_t i = 0; i < n_claims; ++i) {
    const bool rumor = i % 2 == 0;
    const bool subjective = (i / 2) % 2 == 0;
    const auto topic = kTopics[detail::bounded(rng, kTopics.size())];

    CorpusRecord rec;
    rec.claim_id = "synth-" + std::to_string(i);
    rec.claim_text = claim_text(i, rumor, subjective, topic);
    rec.label = std::string(to_string(rumor ? Label::Rumor : Label::NonRumor));
    rec.locale = "EN";

    const std::size_t n_comments = 6 + detail::bounded(rng, 7);
    double delay = 0.0;
    for (std::size_t c = 0; c < n_comments; ++c) {
      delay += static_cast<double>(5 + detail::bounded(rng, 596));
      const auto& stance = kStances[detail::bounded(rng, kStances.size())];
      rec.comments.push_back({std::string(stance.sentence), delay});
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<ScriptRule> synth_oracle_rules(std::span<const CorpusRecord> records) {
  using Match = ScriptRule::Match;
  std::vector<ScriptRule> rules;

  for (const auto& stance : kStances) {
    rules.push_back({Match::Substring, std::string(stance.phrase),
                     "{\"Reason\": \"" + std::string(stance.reason) + "\", \"Score\": \"" +
                         std::string(stance.score) + "\"}",
                     AgentRole::Scorer});
  }
  rules.push_back({Match::Substring, std::string(kSubjectiveMarker), "Yes",
                   AgentRole::SubjectivityClassifier});
  rules.push_back({Match::Substring, "Claim:", "No", AgentRole::SubjectivityClassifier});

  std::vector<ScriptRule> dissent;
  std::vector<ScriptRule> judge;
  std::vector<ScriptRule> agree;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto label = parse_label(records[i].label);
    if (!label) throw ContractError("record without a valid label: " + records[i].claim_id);
    const auto tag_pos = records[i].claim_text.rfind(" #s");
    const std::string tag = tag_pos == std::string::npos ? records[i].claim_text
                                                         : records[i].claim_text.substr(tag_pos + 1);
    const Verdict gold = verdict_from_label(*label);
    const Verdict other = gold == Verdict::Fake ? Verdict::Real : Verdict::Fake;
    const std::string right = "Weighing the evidence, my answer is " + std::string(to_string(gold)) + ".";
    const std::string wrong = "I remain unconvinced. My answer is " + std::string(to_string(other)) + ".";

    if (i % 3 == 2) {
      dissent.push_back({Match::Substring, tag, wrong, AgentRole::DebaterN});
      judge.push_back({Match::Substring, tag, std::string(to_string(gold)), AgentRole::Judge});
    }
    agree.push_back({Match::Substring, tag, right, std::nullopt});
  }
  for (auto* group : {&dissent, &judge, &agree}) {
    rules.insert(rules.end(), group->begin(), group->end());
  }
  return rules;
}

}  // namespace stancedebate
