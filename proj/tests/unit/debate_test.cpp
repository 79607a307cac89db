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

#include <gtest/gtest.h>

#include "stancedebate/agent.hpp"
#include "stancedebate/debate.hpp"
#include "stancedebate/digest.hpp"
#include "stancedebate/errors.hpp"
#include "stancedebate/opinion.hpp"
#include "stancedebate/prompts.hpp"
#include "test_backends.hpp"

namespace stancedebate {
namespace {

using testing::make_thread;
using testing::policy_backend;

std::string word(Verdict v) { return std::string(to_string(v)); }

// Verdict-level policies: (own previous, opponent previous) -> next.
using VerdictRule = std::function<Verdict(Verdict own, Verdict other)>;

// Hand simulation of the simultaneous update: both new verdicts are computed
// from the previous pair before either is replaced.
std::pair<Verdict, Verdict> simulate(Verdict p, Verdict n, int rounds, const VerdictRule& rule_p,
                                     const VerdictRule& rule_n) {
  for (int j = 1; j <= rounds; ++j) {
    const Verdict next_p = rule_p(p, n);
    const Verdict next_n = rule_n(n, p);
    p = next_p;
    n = next_n;
  }
  return {p, n};
}

Thread sample_thread() {
  return make_thread("t1", "A claim about something.", Label::Rumor,
                     {{"first comment", 1}, {"second comment", 2}});
}

DebateTranscript run(std::shared_ptr<testing::FunctionBackend> backend, DebateConfig cfg = {}) {
  auto gateway = testing::make_gateway(std::move(backend));
  return detect(*gateway, sample_thread(), cfg, StanceConfig{});
}

TEST(DebateTest, FixedPointPolicyKeepsRoundZeroVerdicts) {
  for (Verdict p0 : {Verdict::Fake, Verdict::Real}) {
    for (Verdict n0 : {Verdict::Fake, Verdict::Real}) {
      auto backend = policy_backend([=](AgentRole role, int, const std::string&) {
        return "I keep my view: " + word(role == AgentRole::DebaterP ? p0 : n0);
      });
      const auto t = run(backend);
      ASSERT_FALSE(t.aborted()) << t.failure->reason;
      for (const auto& op : t.opinions) {
        EXPECT_EQ(op.verdict, op.agent == AgentRole::DebaterP ? p0 : n0);
      }
    }
  }
}

// DebaterN adopts DebaterP's previous verdict; DebaterP repeats itself.
TEST(DebateTest, SwitchingPolicyMatchesHandSimulation) {
  const auto expected =
      simulate(Verdict::Fake, Verdict::Real, 1, [](Verdict own, Verdict) { return own; },
               [](Verdict, Verdict other) { return other; });
  EXPECT_EQ(expected, std::make_pair(Verdict::Fake, Verdict::Fake));

  auto backend = policy_backend([](AgentRole role, int round, const std::string& other) {
    if (role == AgentRole::DebaterP) return std::string("Fake");
    if (round == 0) return std::string("Real");
    return "Persuaded. " + word(extract_verdict(other));
  });
  DebateConfig cfg;
  cfg.max_rounds = 1;
  const auto t = run(backend, cfg);
  ASSERT_EQ(t.opinions.size(), 4u);
  EXPECT_EQ(std::make_pair(t.opinions[2].verdict, t.opinions[3].verdict), expected);
  EXPECT_TRUE(t.consensus);
  EXPECT_FALSE(t.judge_opinion);
}

// Over several rounds both agents flip to the opponent's last verdict; the
// simultaneous update makes them swap forever and never agree.
TEST(DebateTest, MutualSwitchingMatchesHandSimulation) {
  for (int rounds = 1; rounds <= 4; ++rounds) {
    const auto expected = simulate(Verdict::Fake, Verdict::Real, rounds,
                                   [](Verdict, Verdict other) { return other; },
                                   [](Verdict, Verdict other) { return other; });
    auto backend = policy_backend([](AgentRole role, int round, const std::string& other) {
      if (round == 0) return std::string(role == AgentRole::DebaterP ? "Fake" : "Real");
      return "Switching to " + word(extract_verdict(other));
    }, "Real");
    DebateConfig cfg;
    cfg.max_rounds = rounds;
    const auto t = run(backend, cfg);
    ASSERT_EQ(t.opinions.size(), static_cast<std::size_t>(2 * (rounds + 1)));
    const auto& last_p = t.opinions[t.opinions.size() - 2];
    const auto& last_n = t.opinions.back();
    EXPECT_EQ(std::make_pair(last_p.verdict, last_n.verdict), expected) << rounds;
    EXPECT_FALSE(t.consensus);
    ASSERT_TRUE(t.judge_opinion);
    EXPECT_EQ(t.final_verdict, Verdict::Real);
  }
}

TEST(DebateTest, ZeroRoundsKeepsOnlyInitialOpinions) {
  auto backend = policy_backend([](AgentRole, int, const std::string&) { return std::string("Real"); });
  DebateConfig cfg;
  cfg.max_rounds = 0;
  const auto t = run(backend, cfg);
  ASSERT_EQ(t.opinions.size(), 2u);
  for (const auto& op : t.opinions) EXPECT_EQ(op.round, 0);
  EXPECT_EQ(t.rounds_run, 0);
}

TEST(DebateTest, OpinionOrderAndRounds) {
  auto backend = policy_backend([](AgentRole, int, const std::string&) { return std::string("Real"); });
  const auto t = run(backend);
  ASSERT_EQ(t.opinions.size(), 6u);
  for (std::size_t i = 0; i < t.opinions.size(); ++i) {
    EXPECT_EQ(t.opinions[i].round, static_cast<int>(i / 2));
    EXPECT_EQ(t.opinions[i].agent, i % 2 == 0 ? AgentRole::DebaterP : AgentRole::DebaterN);
    EXPECT_EQ(t.opinions[i].template_id,
              i < 2 ? TemplateId::InitNonSubjective : TemplateId::DebateTurn);
  }
}

TEST(DebateTest, AgreementSkipsJudge) {
  auto backend = policy_backend([](AgentRole role, int, const std::string&) {
    return std::string(role == AgentRole::DebaterP ? "It is Real." : "Also real");
  });
  const auto t = run(backend);
  EXPECT_TRUE(t.consensus);
  EXPECT_FALSE(t.judge_opinion);
  EXPECT_EQ(t.final_verdict, Verdict::Real);
  EXPECT_EQ(backend->calls_for(AgentRole::Judge), 0u);
}

TEST(DebateTest, DisagreementInvokesJudge) {
  auto backend = policy_backend([](AgentRole role, int, const std::string&) {
    return std::string(role == AgentRole::DebaterP ? "Fake" : "Real");
  }, "After weighing both sides: Fake");
  const auto t = run(backend);
  EXPECT_FALSE(t.consensus);
  ASSERT_TRUE(t.judge_opinion);
  EXPECT_EQ(t.judge_opinion->agent, AgentRole::Judge);
  EXPECT_EQ(t.judge_opinion->template_id, TemplateId::JudgeVerdict);
  EXPECT_EQ(t.final_verdict, Verdict::Fake);
  EXPECT_EQ(backend->calls_for(AgentRole::Judge), 1u);
}

TEST(DebateTest, EarlyExitStopsAtFirstConsensus) {
  auto backend = policy_backend([](AgentRole role, int round, const std::string&) {
    return std::string(role == AgentRole::DebaterN && round == 0 ? "Fake" : "Real");
  });
  DebateConfig cfg;
  cfg.max_rounds = 5;
  cfg.early_exit_on_consensus = true;
  const auto t = run(backend, cfg);
  EXPECT_EQ(t.rounds_run, 1);
  EXPECT_EQ(t.opinions.size(), 4u);
  EXPECT_TRUE(t.consensus);
}

TEST(ConsensusTest, ComparesVerdictsOnly) {
  Opinion p{AgentRole::DebaterP, 2, "so Fake", Verdict::Fake, TemplateId::DebateTurn, ""};
  Opinion n{AgentRole::DebaterN, 2, "Fake it is", Verdict::Fake, TemplateId::DebateTurn, ""};
  EXPECT_TRUE(check_consensus(p, n));
  n.verdict = Verdict::Real;
  EXPECT_FALSE(check_consensus(p, n));
  p.verdict = n.verdict = Verdict::Real;
  EXPECT_TRUE(check_consensus(p, n));
  n.round = 1;
  EXPECT_THROW(check_consensus(p, n), ContractError);
}

TEST(JudgeTest, PassesThroughScriptedVerdictAndBindsFinalReplies) {
  auto backend = policy_backend([](AgentRole, int, const std::string&) { return std::string(); },
                                "Fake");
  auto gateway = testing::make_gateway(backend);
  const Claim claim("c", "the claim");
  const Opinion p{AgentRole::DebaterP, 2, "P says Real", Verdict::Real, TemplateId::DebateTurn, ""};
  const Opinion n{AgentRole::DebaterN, 2, "N says Fake", Verdict::Fake, TemplateId::DebateTurn, ""};
  const auto j = judge_verdict(*gateway, claim, p, n);
  EXPECT_EQ(j.verdict, Verdict::Fake);
  const std::string expected_prompt =
      TemplateSet::builtin().get(TemplateId::JudgeVerdict, Locale::EN).render(
          {{"Claim", "the claim"}, {"AgentPReply", "P says Real"}, {"AgentNReply", "N says Fake"}});
  EXPECT_EQ(j.prompt_digest, sha256_hex(expected_prompt));
  EXPECT_EQ(testing::last_user_text(backend->requests().back()), expected_prompt);
}

TEST(JudgeTest, RejectsAgreeingDebaters) {
  auto backend = policy_backend([](AgentRole, int, const std::string&) { return std::string(); });
  auto gateway = testing::make_gateway(backend);
  const Opinion p{AgentRole::DebaterP, 2, "Real", Verdict::Real, TemplateId::DebateTurn, ""};
  EXPECT_THROW(judge_verdict(*gateway, Claim("c", "x"), p, p), ContractError);
  EXPECT_EQ(backend->calls(), 0u);
}

TEST(RoundTest, PromptsUsePreviousRoundOnly) {
  auto backend = policy_backend([](AgentRole role, int round, const std::string&) {
    return word(role == AgentRole::DebaterP ? Verdict::Fake : Verdict::Real) + " r" +
           std::to_string(round);
  });
  auto gateway = testing::make_gateway(backend);
  AgentState sp(AgentRole::DebaterP, Locale::EN);
  AgentState sn(AgentRole::DebaterN, Locale::EN);
  const auto p0 = generate_initial_opinion(*gateway, sp, Claim("c", "x"), {}, Subjectivity::NonSubjective);
  const auto n0 = generate_initial_opinion(*gateway, sn, Claim("c", "x"), {}, Subjectivity::NonSubjective);
  for (RoundOrder order : {RoundOrder::DebaterPFirst, RoundOrder::DebaterNFirst}) {
    AgentState cp = sp, cn = sn;
    const auto [p1, n1] = run_debate_round(*gateway, cp, cn, p0, n0, 1, order);
    EXPECT_NE(cp.history()[3].text.find("Other debaters' opinions: " + n0.raw_text), std::string::npos);
    EXPECT_NE(cn.history()[3].text.find("Other debaters' opinions: " + p0.raw_text), std::string::npos);
    EXPECT_EQ(p1.round, 1);
    EXPECT_EQ(n1.round, 1);
  }
}

TEST(RandomSplitTest, SeededAndBounded) {
  std::vector<Comment> comments;
  for (int i = 0; i < 30; ++i) comments.emplace_back("c" + std::to_string(i), i);
  const auto a = random_split(comments, 5, 42, "claim");
  const auto b = random_split(comments, 5, 42, "claim");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.mode, SplitMode::RandomSplit);
  EXPECT_EQ(a.support.size(), 5u);
  EXPECT_EQ(a.oppose.size(), 5u);
  EXPECT_NE(random_split(comments, 5, 43, "claim"), a);

  const auto small = random_split(std::span(comments).first(3), 5, 42, "claim");
  EXPECT_EQ(small.support.size(), 2u);
  EXPECT_EQ(small.oppose.size(), 1u);
}

TEST(DebateConfigTest, ValidationAndLabels) {
  DebateConfig cfg;
  EXPECT_EQ(cfg.ablation_label(), "Full Model");
  cfg.force_subjective_prompt = cfg.force_nonsubjective_prompt = true;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.max_rounds = -1;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.skip_stance_separation = true;
  cfg.skip_debate = true;
  EXPECT_EQ(cfg.ablation_label(), "w/o Stance + w/o Debate");
}

TEST(DetectTest, VerdictFailureAbortsClaimWithStage) {
  auto backend = policy_backend([](AgentRole role, int round, const std::string&) {
    return std::string(role == AgentRole::DebaterN && round >= 1 ? "no idea" : "Real");
  });
  const auto t = run(backend);
  ASSERT_TRUE(t.aborted());
  EXPECT_EQ(t.failure->stage, "debate");
  EXPECT_FALSE(t.final_verdict);
}

TEST(DetectTest, GoldAndAblationRecorded) {
  auto backend = policy_backend([](AgentRole, int, const std::string&) { return std::string("Real"); });
  const auto t = run(backend);
  EXPECT_EQ(t.gold, Label::Rumor);
  EXPECT_EQ(t.ablation, "Full Model");
  EXPECT_EQ(t.claim_id, "t1");
  EXPECT_EQ(t.stance_sets.support.size(), 2u);
}

}  // namespace
}  // namespace stancedebate
