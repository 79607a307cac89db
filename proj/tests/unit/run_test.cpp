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
#include <httplib.h>

#include <sstream>

#include "scratch_dir.hpp"
#include "stancedebate/corpus.hpp"
#include "stancedebate/errors.hpp"
#include "stancedebate/run.hpp"
#include "stancedebate/transcript.hpp"
#include "test_backends.hpp"

namespace stancedebate {
namespace {

namespace fs = std::filesystem;
using testing::ScratchDir;
using testing::slurp;

TEST(RunConfigTest, JsonRoundTrip) {
  RunConfig cfg;
  cfg.backend.endpoint_url = "http://localhost:8000/v1/chat/completions";
  cfg.backend.role_models[AgentRole::Scorer] = "small";
  cfg.backend.timeout = std::chrono::milliseconds{1234};
  cfg.stance.k = 7;
  cfg.debate.max_rounds = 3;
  cfg.debate.skip_debate = true;
  cfg.corpus = "c.jsonl";
  cfg.workers = 2;
  cfg.seed = 99;
  cfg.locale = Locale::ZH;
  const auto doc = run_config_to_json(cfg);
  const auto back = run_config_from_json(doc);
  EXPECT_EQ(run_config_to_json(back), doc);
  EXPECT_EQ(back.backend.model_for(AgentRole::Scorer), "small");
  EXPECT_EQ(back.debate.seed, 99u);
  EXPECT_EQ(back.debate.locale_override, Locale::ZH);
}

TEST(RunConfigTest, UnknownKeysRejected) {
  EXPECT_THROW(run_config_from_json({{"corpus", "x"}, {"colour", "blue"}}), ConfigError);
  EXPECT_THROW(run_config_from_json({{"debate", {{"max_round", 2}}}}), ConfigError);
}

TEST(RunConfigTest, ValidateNeedsBackendAndCorpus) {
  RunConfig cfg;
  cfg.corpus = "c.jsonl";
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.scripted_rules = "r.json";
  EXPECT_NO_THROW(cfg.validate());
  cfg.workers = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(RunConfigTest, FlagsOverrideFile) {
  RunConfig cfg;
  FlagOverrides flags;
  flags.k = 5;
  flags.rounds = 1;
  flags.seed = 3;
  flags.model = "m2";
  flags.scorer_model = "s2";
  flags.ablation = AblationMode::ForceSubjective;
  apply_overrides(cfg, flags);
  EXPECT_EQ(cfg.stance.k, 5u);
  EXPECT_EQ(cfg.debate.max_rounds, 1);
  EXPECT_EQ(cfg.debate.seed, 3u);
  EXPECT_EQ(cfg.backend.model_for(AgentRole::Judge), "m2");
  EXPECT_EQ(cfg.backend.model_for(AgentRole::Scorer), "s2");
  EXPECT_TRUE(cfg.debate.force_subjective_prompt);
  EXPECT_EQ(cfg.debate.ablation_label(), "w/o Non-Sub");
}

TEST(RunConfigTest, AblationNames) {
  EXPECT_EQ(parse_ablation("no-debate"), AblationMode::NoDebate);
  EXPECT_EQ(parse_ablation("no-stance"), AblationMode::NoStance);
  EXPECT_EQ(parse_ablation("bogus"), std::nullopt);
  DebateConfig d;
  apply_ablation(d, AblationMode::NoDebate);
  EXPECT_EQ(d.ablation_label(), "w/o Debate");
  apply_ablation(d, AblationMode::None);
  EXPECT_EQ(d.ablation_label(), "Full Model");
}

TEST(CheckpointsTest, Parsing) {
  EXPECT_EQ(parse_checkpoints("0,5,10,20,40"), (std::vector<std::size_t>{0, 5, 10, 20, 40}));
  EXPECT_EQ(parse_checkpoints(" 3 , 7 "), (std::vector<std::size_t>{3, 7}));
  EXPECT_THROW(parse_checkpoints("5,5"), ConfigError);
  EXPECT_THROW(parse_checkpoints("5,3"), ConfigError);
  EXPECT_THROW(parse_checkpoints("1,,2"), ConfigError);
  EXPECT_THROW(parse_checkpoints("-1"), ConfigError);
  EXPECT_THROW(parse_checkpoints("abc"), ConfigError);
  EXPECT_THROW(parse_checkpoints(""), ConfigError);
}

TEST(TranscriptFileNameTest, SafeAndDistinct) {
  EXPECT_EQ(transcript_file_name("synth-0"), "synth-0.json");
  const auto a = transcript_file_name("a/b");
  const auto b = transcript_file_name("a_b");
  EXPECT_EQ(a.find('/'), std::string::npos);
  EXPECT_NE(a, b);
  EXPECT_EQ(transcript_file_name("..").front(), '_');
}

TEST(RunBatchTest, OrderAndResultsIndependentOfWorkerCount) {
  std::vector<Thread> threads;
  for (const auto& rec : synth_fixtures(3, 12)) threads.push_back(thread_from_record(rec));
  const auto records = synth_fixtures(3, 12);
  auto run = [&](int workers) {
    auto gateway = testing::make_gateway(std::make_shared<ScriptedBackend>(synth_oracle_rules(records)));
    return run_batch(*gateway, threads, DebateConfig{}, StanceConfig{}, workers);
  };
  const auto one = run(1);
  ASSERT_EQ(one.size(), threads.size());
  for (std::size_t i = 0; i < one.size(); ++i) EXPECT_EQ(one[i].claim_id, threads[i].claim().id());
  EXPECT_EQ(run(4), one);
  EXPECT_EQ(run(32), one);
}

class CommandTest : public ::testing::Test {
 protected:
  ScratchDir dir{"cmd"};
  std::vector<CorpusRecord> records = synth_fixtures(7, 4);

  RunConfig config(std::vector<ScriptRule> extra_rules = {}) {
    auto rules = synth_oracle_rules(records);
    rules.insert(rules.begin(), extra_rules.begin(), extra_rules.end());
    testing::write_synth_corpus(dir / "corpus.jsonl", records);
    testing::write_rules(dir / "rules.json", rules);
    RunConfig cfg;
    cfg.corpus = dir / "corpus.jsonl";
    cfg.scripted_rules = dir / "rules.json";
    cfg.output_dir = dir / "runs";
    cfg.workers = 2;
    return cfg;
  }
};

TEST_F(CommandTest, DetectHappyPath) {
  const auto cfg = config();
  std::ostringstream err;
  EXPECT_EQ(cmd_detect(cfg, err), kExitOk) << err.str();
  const auto run_dir = run_directory(cfg);
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(run_dir / "transcripts")) {
    ++files;
    EXPECT_NO_THROW(transcript_from_json(nlohmann::json::parse(slurp(entry.path()))));
  }
  EXPECT_EQ(files, 4u);
  const auto manifest = nlohmann::json::parse(slurp(run_dir / "manifest.json"));
  EXPECT_EQ(manifest["config_digest"], config_digest(cfg));
  EXPECT_EQ(manifest["ablation"], "Full Model");
  EXPECT_TRUE(manifest.contains("started_at"));
  EXPECT_TRUE(manifest["prompt_templates"].contains("EN"));
}

TEST_F(CommandTest, MissingCorpusIsFatal) {
  auto cfg = config();
  cfg.corpus = dir / "missing.jsonl";
  std::ostringstream err;
  EXPECT_EQ(cmd_detect(cfg, err), kExitFatal);
  EXPECT_NE(err.str().find("missing.jsonl"), std::string::npos);
}

TEST_F(CommandTest, UnparseableVerdictGivesPartialExit) {
  const auto cfg = config({{ScriptRule::Match::Substring, "#s00001", "I cannot tell.", AgentRole::DebaterP}});
  std::ostringstream err;
  EXPECT_EQ(cmd_detect(cfg, err), kExitPartial);
  const auto run_dir = run_directory(cfg);
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& entry : fs::directory_iterator(run_dir / "transcripts")) ++files;
  EXPECT_EQ(files, 3u);
  std::istringstream errors(slurp(run_dir / "errors.jsonl"));
  std::string line;
  std::vector<nlohmann::json> lines;
  while (std::getline(errors, line)) lines.push_back(nlohmann::json::parse(line));
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0]["claim_id"], "synth-1");
  EXPECT_EQ(lines[0]["stage"], "initial");
}

TEST_F(CommandTest, EvaluateOracleBackendIsPerfect) {
  auto cfg = config();
  std::ostringstream err;
  ASSERT_EQ(cmd_evaluate(cfg, err), kExitOk) << err.str();
  const auto report = nlohmann::json::parse(slurp(run_directory(cfg) / "report.json"));
  EXPECT_DOUBLE_EQ(report["accuracy"].get<double>(), 1.0);
  EXPECT_EQ(report["n_claims"], 4);
}

TEST_F(CommandTest, EvaluateRecordsAblationInManifest) {
  auto cfg = config();
  apply_ablation(cfg.debate, AblationMode::NoDebate);
  std::ostringstream err;
  ASSERT_EQ(cmd_evaluate(cfg, err), kExitOk) << err.str();
  const auto run_dir = run_directory(cfg);
  EXPECT_EQ(nlohmann::json::parse(slurp(run_dir / "manifest.json"))["ablation"], "w/o Debate");
  EXPECT_EQ(nlohmann::json::parse(slurp(run_dir / "report.json"))["ablation"], "w/o Debate");
}

TEST_F(CommandTest, EvaluateReusesMatchingTranscripts) {
  const auto cfg = config();
  std::ostringstream err;
  ASSERT_EQ(cmd_detect(cfg, err), kExitOk);
  ASSERT_EQ(cmd_evaluate(cfg, err), kExitOk);
  const auto manifest = nlohmann::json::parse(slurp(run_directory(cfg) / "manifest.json"));
  EXPECT_TRUE(manifest["transcripts_reused"].get<bool>());
}

TEST_F(CommandTest, EarlyWritesOneRowPerCheckpoint) {
  const auto cfg = config();
  const std::vector<std::size_t> checkpoints{0, 5, 10, 20, 40};
  std::ostringstream err;
  ASSERT_EQ(cmd_early(cfg, checkpoints, err), kExitOk) << err.str();
  std::istringstream csv(slurp(run_directory(cfg) / "early_curve.csv"));
  std::string line;
  std::size_t rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 6u);
  EXPECT_TRUE(fs::exists(run_directory(cfg) / "manifest_early.json"));

  const std::vector<std::size_t> dup{5, 5};
  EXPECT_EQ(cmd_early(cfg, dup, err), kExitFatal);
}

TEST_F(CommandTest, DigestTracksSemanticInputsOnly) {
  auto cfg = config();
  const auto base = config_digest(cfg);
  auto moved = cfg;
  moved.output_dir = dir / "elsewhere";
  moved.workers = 9;
  moved.cache_path = dir / "cache.jsonl";
  EXPECT_EQ(config_digest(moved), base);
  auto changed = cfg;
  changed.stance.k = 3;
  EXPECT_NE(config_digest(changed), base);
  changed = cfg;
  changed.seed = 1;
  EXPECT_NE(config_digest(changed), base);
}

// Minimal chat-completions server: scores every comment 0.5, calls every
// claim real, and rejects everything when `deny` is set.
class ChatServer {
 public:
  explicit ChatServer(bool deny) {
    server_.Post("/v1/chat/completions", [deny](const httplib::Request& req, httplib::Response& res) {
      if (deny) {
        res.status = 401;
        return;
      }
      const auto body = nlohmann::json::parse(req.body);
      const std::string prompt = body["messages"].back()["content"];
      const std::string text = prompt.find("\"Score\"") != std::string::npos
                                   ? R"({"Reason": "ok", "Score": "0.5"})"
                               : prompt.find("personal opinions") != std::string::npos ? "No"
                                                                                      : "Real";
      res.set_content(nlohmann::json{{"choices", {{{"message", {{"content", text}}}}}}}.dump(),
                      "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~ChatServer() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions"; }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

TEST_F(CommandTest, EvaluateOverHttp) {
  ChatServer server(false);
  auto cfg = config();
  cfg.scripted_rules.clear();
  cfg.backend.endpoint_url = server.url();
  std::ostringstream err;
  ASSERT_EQ(cmd_evaluate(cfg, err), kExitOk) << err.str();
  const auto report = nlohmann::json::parse(slurp(run_directory(cfg) / "report.json"));
  EXPECT_EQ(report["n_claims"], 4);
  EXPECT_DOUBLE_EQ(report["accuracy"].get<double>(), 0.5);
}

TEST_F(CommandTest, RejectedCredentialsAreFatalBeforeAnyClaim) {
  ChatServer server(true);
  auto cfg = config();
  cfg.scripted_rules.clear();
  cfg.backend.endpoint_url = server.url();
  std::ostringstream err;
  EXPECT_EQ(cmd_detect(cfg, err), kExitFatal);
  EXPECT_NE(err.str().find("401"), std::string::npos);
  EXPECT_FALSE(fs::exists(run_directory(cfg) / "transcripts"));
}

}  // namespace
}  // namespace stancedebate
