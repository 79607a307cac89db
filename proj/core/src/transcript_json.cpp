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

#include "stancedebate/transcript.hpp"

#include "stancedebate/errors.hpp"

namespace stancedebate {
namespace {

using nlohmann::json;

json scored_json(const ScoredComment& sc) {
  return {{"text", sc.comment.text()},
          {"delay_s", sc.comment.delay()},
          {"score", sc.score},
          {"rationale", sc.rationale}};
}

json opinion_json(const Opinion& op) {
  return {{"agent", to_string(op.agent)},
          {"round", op.round},
          {"template", to_string(op.template_id)},
          {"verdict", to_string(op.verdict)},
          {"prompt_digest", op.prompt_digest},
          {"raw_text", op.raw_text}};
}

const json& field(const json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) {
    throw SchemaError(std::string("transcript is missing field '") + name + "'");
  }
  return doc[name];
}

template <typename T>
T get(const json& doc, const char* name) {
  try {
    return field(doc, name).get<T>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("transcript field '") + name + "': " + e.what());
  }
}

template <typename Parse>
auto parse_enum(const json& doc, const char* name, Parse parse) {
  auto value = parse(get<std::string>(doc, name));
  if (!value) throw SchemaError(std::string("transcript field '") + name + "' has a bad value");
  return *value;
}

ScoredComment scored_from_json(const json& doc) {
  try {
    return ScoredComment{Comment(get<std::string>(doc, "text"), get<double>(doc, "delay_s")),
                         get<double>(doc, "score"), get<std::string>(doc, "rationale")};
  } catch (const ContractError& e) {
    throw SchemaError(e.what());
  }
}

Opinion opinion_from_json(const json& doc) {
  Opinion op;
  op.agent = parse_enum(doc, "agent", parse_agent_role);
  op.round = get<int>(doc, "round");
  op.template_id = parse_enum(doc, "template", parse_template_id);
  op.verdict = parse_enum(doc, "verdict", parse_verdict);
  op.prompt_digest = get<std::string>(doc, "prompt_digest");
  op.raw_text = get<std::string>(doc, "raw_text");
  return op;
}

}  // namespace

json transcript_to_json(const DebateTranscript& t) {
  json support = json::array();
  for (const auto& sc : t.stance_sets.support) support.push_back(scored_json(sc));
  json oppose = json::array();
  for (const auto& sc : t.stance_sets.oppose) oppose.push_back(scored_json(sc));
  json opinions = json::array();
  for (const auto& op : t.opinions) opinions.push_back(opinion_json(op));

  json doc;
  doc["claim_id"] = t.claim_id;
  doc["gold"] = t.gold ? json(to_string(*t.gold)) : json(nullptr);
  doc["ablation"] = t.ablation;
  doc["subjectivity"] = to_string(t.subjectivity);
  doc["subjectivity_forced"] = t.subjectivity_forced;
  doc["stance_sets"] = {{"mode", to_string(t.stance_sets.mode)},
                        {"k", t.stance_sets.k},
                        {"support", std::move(support)},
                        {"oppose", std::move(oppose)}};
  doc["opinions"] = std::move(opinions);
  doc["rounds_run"] = t.rounds_run;
  doc["consensus"] = t.consensus;
  doc["judge_opinion"] = t.judge_opinion ? opinion_json(*t.judge_opinion) : json(nullptr);
  doc["final_verdict"] = t.final_verdict ? json(to_string(*t.final_verdict)) : json(nullptr);
  doc["failure"] = t.failure ? json{{"stage", t.failure->stage}, {"reason", t.failure->reason}}
                             : json(nullptr);
  return doc;
}

DebateTranscript transcript_from_json(const json& doc) {
  DebateTranscript t;
  t.claim_id = get<std::string>(doc, "claim_id");
  if (!field(doc, "gold").is_null()) t.gold = parse_enum(doc, "gold", parse_label);
  t.ablation = get<std::string>(doc, "ablation");
  t.subjectivity = parse_enum(doc, "subjectivity", parse_subjectivity);
  t.subjectivity_forced = get<bool>(doc, "subjectivity_forced");

  const json& sets = field(doc, "stance_sets");
  t.stance_sets.mode = parse_enum(sets, "mode", parse_split_mode);
  t.stance_sets.k = get<std::size_t>(sets, "k");
  for (const auto& item : field(sets, "support")) t.stance_sets.support.push_back(scored_from_json(item));
  for (const auto& item : field(sets, "oppose")) t.stance_sets.oppose.push_back(scored_from_json(item));

  for (const auto& item : field(doc, "opinions")) t.opinions.push_back(opinion_from_json(item));
  t.rounds_run = get<int>(doc, "rounds_run");
  t.consensus = get<bool>(doc, "consensus");
  if (!field(doc, "judge_opinion").is_null()) t.judge_opinion = opinion_from_json(doc["judge_opinion"]);
  if (!field(doc, "final_verdict").is_null()) {
    t.final_verdict = parse_enum(doc, "final_verdict", parse_verdict);
  }
  if (const json& f = field(doc, "failure"); !f.is_null()) {
    t.failure = ClaimFailure{get<std::string>(f, "stage"), get<std::string>(f, "reason")};
  }
  return t;
}

}  // namespace stancedebate
