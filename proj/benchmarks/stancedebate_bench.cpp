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

#include <benchmark/benchmark.h>

#include <random>

#include "stancedebate/evalx.hpp"
#include "stancedebate/opinion.hpp"
#include "stancedebate/prompts.hpp"
#include "stancedebate/stance.hpp"

namespace sd = stancedebate;

namespace {

std::vector<sd::ScoredComment> random_scores(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> score(-1.0, 1.0);
  std::vector<sd::ScoredComment> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({sd::Comment("comment", static_cast<double>(i)), score(rng), ""});
  }
  return out;
}

void BM_SeparateStances(benchmark::State& state) {
  const auto scored = random_scores(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sd::separate_stances(scored, 20));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SeparateStances)->Range(16, 16 << 10)->Complexity();

void BM_ComputeMetrics(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::vector<sd::LabelPair> pairs(static_cast<std::size_t>(state.range(0)));
  for (auto& p : pairs) {
    p.gold = rng() % 2 ? sd::Label::Rumor : sd::Label::NonRumor;
    p.predicted = rng() % 2 ? sd::Label::Rumor : sd::Label::NonRumor;
  }
  for (auto _ : state) benchmark::DoNotOptimize(sd::compute_metrics(pairs));
}
BENCHMARK(BM_ComputeMetrics)->Range(64, 64 << 10);

void BM_ExtractVerdict(benchmark::State& state) {
  std::string text;
  while (text.size() < static_cast<std::size_t>(state.range(0))) {
    text += "Weighing the supporting comments against the rebuttals, the evidence is thin. ";
  }
  text += "Final answer: Fake";
  for (auto _ : state) benchmark::DoNotOptimize(sd::extract_verdict(text));
}
BENCHMARK(BM_ExtractVerdict)->Range(256, 64 << 10);

void BM_RenderJudgePrompt(benchmark::State& state) {
  const auto& tpl = sd::TemplateSet::builtin().get(sd::TemplateId::JudgeVerdict, sd::Locale::EN);
  const std::string reply(2000, 'x');
  const sd::PromptBindings bindings{{"Claim", "A claim."}, {"AgentPReply", reply}, {"AgentNReply", reply}};
  for (auto _ : state) benchmark::DoNotOptimize(tpl.render(bindings));
}
BENCHMARK(BM_RenderJudgePrompt);

}  // namespace

BENCHMARK_MAIN();
