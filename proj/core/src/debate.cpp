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

#include "stancedebate/debate.hpp"

#include <exception>
#include <future>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "stancedebate/errors.hpp"
#include "stancedebate/opinion.hpp"
#include "rng.hpp"
#include "stancedebate/prompts.hpp"

namespace stancedebate {
namespace {

template <typename RunP, typename RunN>
std::pair<Opinion, Opinion> run_pair(RoundOrder order, RunP&& run_p, RunN&& run_n) {
  switch (order) {
    case RoundOrder::DebaterPFirst: {
      Opinion p = run_p();
      Opinion n = run_n();
      return {std::move(p), std::move(n)};
    }
    case RoundOrder::DebaterNFirst: {
      Opinion n = run_n();
      Opinion p = run_p();
      return {std::move(p), std::move(n)};
    }
    case RoundOrder::Concurrent:
      break;
  }
  auto pending_n = std::async(std::launch::async, std::forward<RunN>(run_n));
  std::optional<Opinion> p;
  std::exception_ptr p_error;
  try {
    p = run_p();
  } catch (...) {
    p_error = std::current_exception();
  }
  Opinion n = pending_n.get();
  if (p_error) std::rethrow_exception(p_error);
  return {std::move(*p), std::move(n)};
}

}  // namespace

void DebateConfig::validate() const {
  if (max_rounds < 0) throw ConfigError("max_rounds must be >= 0");
  if (force_subjective_prompt && force_nonsubjective_prompt) {
    throw ConfigError("force_subjective_prompt and force_nonsubjective_prompt are exclusive");
  }
}

std::string DebateConfig::ablation_label() const {
  std::string label;
  auto add = [&](std::string_view part) {
    if (!label.empty()) label += " + ";
    label += part;
  };
  if (skip_stance_separation) add("w/o Stance");
  if (force_subjective_prompt) add("w/o Non-Sub");
  if (force_nonsubjective_prompt) add("w/o Sub");
  if (skip_debate) add("w/o Debate");
  return label.empty() ? "Full Model" : label;
}

std::pair<Opinion, Opinion> run_debate_round(Gateway& gateway, AgentState& state_p,
                                             AgentState& state_n, const Opinion& prev_p,
                                             const Opinion& prev_n, int round,
                                             RoundOrder order) {
  if (round < 1) throw ContractError("debate rounds start at 1");
  if (prev_p.agent != AgentRole::DebaterP || prev_n.agent != AgentRole::DebaterN ||
      state_p.role() != AgentRole::DebaterP || state_n.role() != AgentRole::DebaterN) {
    throw ContractError("run_debate_round expects (DebaterP, DebaterN)");
  }
  if (prev_p.round != round - 1 || prev_n.round != round - 1) {
    throw ContractError("both debaters need opinions from round " + std::to_string(round - 1));
  }

  const auto& tpl_p = TemplateSet::builtin().get(TemplateId::DebateTurn, state_p.locale());
  const auto& tpl_n = TemplateSet::builtin().get(TemplateId::DebateTurn, state_n.locale());
  // Both prompts are fixed before either agent speaks.
  const std::string prompt_p = tpl_p.render({{"OtherAnswers", prev_n.raw_text}});
  const std::string prompt_n = tpl_n.render({{"OtherAnswers", prev_p.raw_text}});

  return run_pair(
      order,
      [&] { return ask_for_verdict(gateway, state_p, prompt_p, round, TemplateId::DebateTurn); },
      [&] { return ask_for_verdict(gateway, state_n, prompt_n, round, TemplateId::DebateTurn); });
}

bool check_consensus(const Opinion& op_p, const Opinion& op_n) {
  if (op_p.round != op_n.round) {
    throw ContractError("consensus compares opinions from the same round");
  }
  return op_p.verdict == op_n.verdict;
}

Opinion judge_verdict(Gateway& gateway, const Claim& claim, const Opinion& last_p,
                      const Opinion& last_n, Locale locale) {
  if (check_consensus(last_p, last_n)) {
    throw ContractError("judge invoked although the debaters agree");
  }
  const auto& tpl = TemplateSet::builtin().get(TemplateId::JudgeVerdict, locale);
  const std::string prompt = tpl.render({{"Claim", claim.text()},
                                         {"AgentPReply", last_p.raw_text},
                                         {"AgentNReply", last_n.raw_text}});
  AgentState judge(AgentRole::Judge, locale);
  return ask_for_verdict(gateway, judge, prompt, last_p.round, TemplateId::JudgeVerdict);
}

StanceSets random_split(std::span<const Comment> comments, std::size_t k, std::uint64_t seed,
                        std::string_view claim_id) {
  if (k == 0) throw ContractError("k must be >= 1");
  std::mt19937_64 rng(detail::splitmix64(seed ^ detail::fnv1a(claim_id)));

  std::vector<std::size_t> idx(comments.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const std::size_t take = std::min(idx.size(), 2 * k);
  for (std::size_t i = 0; i < take; ++i) {
    const auto j = i + static_cast<std::size_t>(detail::bounded(rng, idx.size() - i));
    std::swap(idx[i], idx[j]);
  }

  StanceSets sets;
  sets.k = k;
  sets.mode = SplitMode::RandomSplit;
  const std::size_t first_half = (take + 1) / 2;
  for (std::size_t i = 0; i < take; ++i) {
    ScoredComment sc{comments[idx[i]], 0.0, "random-split"};
    (i < first_half ? sets.support : sets.oppose).push_back(std::move(sc));
  }
  return sets;
}

DebateTranscript detect(Gateway& gateway, const Thread& thread, const DebateConfig& cfg,
                        const StanceConfig& stance_cfg) {
  const Claim& claim = thread.claim();
  const Locale locale = cfg.locale_override.value_or(claim.locale());

  DebateTranscript t;
  t.claim_id = claim.id();
  t.gold = claim.label();
  t.ablation = cfg.ablation_label();
  t.stance_sets.k = stance_cfg.k;

  std::string stage = "config";
  try {
    cfg.validate();
    stance_cfg.validate();

    stage = "stance";
    if (cfg.skip_stance_separation) {
      t.stance_sets = random_split(thread.comments(), stance_cfg.k, cfg.seed, claim.id());
    } else {
      std::vector<ScoredComment> scored;
      scored.reserve(thread.comments().size());
      for (const auto& comment : thread.comments()) {
        scored.push_back(score_comment(gateway, claim, comment, stance_cfg, locale));
      }
      t.stance_sets = separate_stances(scored, stance_cfg.k);
    }

    stage = "subjectivity";
    if (cfg.force_subjective_prompt || cfg.force_nonsubjective_prompt) {
      t.subjectivity = cfg.force_subjective_prompt ? Subjectivity::Subjective
                                                   : Subjectivity::NonSubjective;
      t.subjectivity_forced = true;
    } else {
      t.subjectivity = classify_subjectivity(gateway, claim, locale);
    }

    stage = "initial";
    if (cfg.skip_debate) {
      std::vector<ScoredComment> merged = t.stance_sets.support;
      merged.insert(merged.end(), t.stance_sets.oppose.begin(), t.stance_sets.oppose.end());
      AgentState single(AgentRole::DebaterP, locale);
      Opinion only = generate_initial_opinion(gateway, single, claim, merged, t.subjectivity);
      t.final_verdict = only.verdict;
      t.opinions.push_back(std::move(only));
      t.consensus = true;
      t.rounds_run = 0;
      return t;
    }

    AgentState state_p(AgentRole::DebaterP, locale);
    AgentState state_n(AgentRole::DebaterN, locale);
    auto [h_p, h_n] = run_pair(
        cfg.round_order,
        [&] {
          return generate_initial_opinion(gateway, state_p, claim, t.stance_sets.support,
                                          t.subjectivity);
        },
        [&] {
          return generate_initial_opinion(gateway, state_n, claim, t.stance_sets.oppose,
                                          t.subjectivity);
        });
    t.opinions.push_back(h_p);
    t.opinions.push_back(h_n);

    stage = "debate";
    for (int j = 1; j <= cfg.max_rounds; ++j) {
      auto [next_p, next_n] =
          run_debate_round(gateway, state_p, state_n, h_p, h_n, j, cfg.round_order);
      h_p = std::move(next_p);
      h_n = std::move(next_n);
      t.opinions.push_back(h_p);
      t.opinions.push_back(h_n);
      t.rounds_run = j;
      if (cfg.early_exit_on_consensus && check_consensus(h_p, h_n)) break;
    }

    t.consensus = check_consensus(h_p, h_n);
    if (t.consensus) {
      t.final_verdict = h_p.verdict;
    } else {
      stage = "judge";
      Opinion judged = judge_verdict(gateway, claim, h_p, h_n, locale);
      t.final_verdict = judged.verdict;
      t.judge_opinion = std::move(judged);
    }
  } catch (const std::exception& e) {
    t.failure = ClaimFailure{stage, e.what()};
    t.final_verdict.reset();
    t.consensus = false;
  }
  return t;
}

}  // namespace stancedebate
