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

// Command-line driver: detect, evaluate, early, synth.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "stancedebate/corpus.hpp"
#include "stancedebate/errors.hpp"
#include "stancedebate/gateway.hpp"
#include "stancedebate/run.hpp"

namespace sd = stancedebate;

namespace {

struct Flags {
  std::string config;
  sd::FlagOverrides o;
  std::string ablation;
  std::string locale;
  std::string checkpoints;
};

void add_run_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON run configuration");
  cmd->add_option("--corpus", f.o.corpus, "JSONL corpus");
  cmd->add_option("--out", f.o.output_dir, "Output directory");
  cmd->add_option("--backend-url", f.o.backend_url, "Chat-completions endpoint");
  cmd->add_option("--model", f.o.model, "Model id for every role");
  cmd->add_option("--scorer-model", f.o.scorer_model, "Model id for stance scoring");
  cmd->add_option("--k", f.o.k, "Comments kept per stance")->check(CLI::PositiveNumber);
  cmd->add_option("--rounds", f.o.rounds, "Debate rounds")->check(CLI::NonNegativeNumber);
  cmd->add_option("--workers", f.o.workers, "Claims processed in parallel")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.o.seed, "Seed for the random-split ablation");
  cmd->add_option("--ablation", f.ablation, "none|no-stance|force-sub|force-nonsub|no-debate")
      ->check(CLI::IsMember({"none", "no-stance", "force-sub", "force-nonsub", "no-debate"}));
  cmd->add_option("--locale", f.locale, "Force prompt locale")
      ->check(CLI::IsMember({"en", "zh", "EN", "ZH"}));
  cmd->add_option("--scripted", f.o.scripted_rules, "Scripted backend rules (JSON)");
  cmd->add_option("--cache", f.o.cache_path, "Response cache file (JSONL)");
}

sd::RunConfig resolve(Flags& f) {
  sd::RunConfig cfg = f.config.empty() ? sd::RunConfig{} : sd::load_run_config(f.config);
  if (!f.ablation.empty()) f.o.ablation = sd::parse_ablation(f.ablation);
  if (!f.locale.empty()) f.o.locale = sd::parse_locale(f.locale);
  sd::apply_overrides(cfg, f.o);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rumor detection with LLM debaters seeded by comment stance"};
  app.require_subcommand(1);

  Flags detect_flags, eval_flags, early_flags;
  auto* detect = app.add_subcommand("detect", "Run detection and write transcripts");
  add_run_flags(detect, detect_flags);
  auto* evaluate = app.add_subcommand("evaluate", "Run (or reuse) detection and score it");
  add_run_flags(evaluate, eval_flags);
  auto* early = app.add_subcommand("early", "Mac-F1 over truncated comment prefixes");
  add_run_flags(early, early_flags);
  early->add_option("--checkpoints", early_flags.checkpoints, "Comma-separated post counts")
      ->required();

  std::filesystem::path synth_out;
  std::filesystem::path synth_rules;
  std::uint64_t synth_seed = 0;
  std::size_t synth_n = 100;
  auto* synth = app.add_subcommand("synth", "Write a synthetic corpus and matching scripted rules");
  synth->add_option("--out", synth_out, "Corpus JSONL path")->required();
  synth->add_option("--rules", synth_rules, "Scripted rules JSON path")->required();
  synth->add_option("--seed", synth_seed);
  synth->add_option("--claims", synth_n)->check(CLI::Range(1, 99999));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return sd::kExitFatal;
  }

  try {
    if (*detect) return sd::cmd_detect(resolve(detect_flags), std::cerr);
    if (*evaluate) return sd::cmd_evaluate(resolve(eval_flags), std::cerr);
    if (*early) {
      const auto checkpoints = sd::parse_checkpoints(early_flags.checkpoints);
      return sd::cmd_early(resolve(early_flags), checkpoints, std::cerr);
    }
    if (*synth) {
      const auto records = sd::synth_fixtures(synth_seed, synth_n);
      std::ofstream corpus(synth_out, std::ios::trunc);
      std::ofstream rules(synth_rules, std::ios::trunc);
      if (!corpus || !rules) throw sd::IoError("cannot write synth output");
      sd::write_records(corpus, records);
      rules << sd::rules_to_json(sd::synth_oracle_rules(records)).dump(2) << '\n';
      return sd::kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return sd::kExitFatal;
}
