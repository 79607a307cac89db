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

#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stancedebate/model.hpp"

namespace stancedebate {

/// Rumor is the positive class.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const noexcept { return tp + fp + tn + fn; }

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

struct LabelPair {
  Label gold;
  Label predicted;
};

struct MetricScores {
  ConfusionMatrix confusion;
  double accuracy = 0.0;
  double macro_f1 = 0.0;
  double rumor_f1 = 0.0;
  double nonrumor_f1 = 0.0;
};

/// F1 = 2PR/(P+R), taken as 0 when P + R == 0 (including when a class is
/// never predicted or never present). Throws EmptyInput on no pairs.
MetricScores compute_metrics(std::span<const LabelPair> pairs);

struct ClaimRow {
  std::string claim_id;
  std::optional<Label> gold;
  std::optional<Label> predicted;
  bool consensus = false;
  bool judge_used = false;
  int rounds = 0;
  bool aborted = false;
};

struct EvalReport {
  std::optional<MetricScores> metrics;  // empty when nothing was scored
  std::size_t n_claims = 0;             // scored claims
  std::size_t n_aborted = 0;
  std::size_t n_unlabeled = 0;
  std::vector<ClaimRow> rows;
  std::string config_digest;
  std::string ablation;
};

/// Aborted and unlabeled claims appear in `rows` but not in the metrics.
EvalReport build_report(std::span<const DebateTranscript> transcripts, std::string config_digest,
                        std::string ablation);

nlohmann::json report_to_json(const EvalReport& report);

/// claim_id,gold,predicted,consensus,judge_used,rounds,aborted
void write_report_csv(std::ostream& out, const EvalReport& report);

struct CurvePoint {
  std::size_t checkpoint = 0;
  double macro_f1 = 0.0;  // NaN when every claim aborted
  std::size_t n_claims = 0;
  std::size_t n_aborted = 0;
};

/// Runs a whole batch of threads and returns one transcript per thread.
using BatchPipeline =
    std::function<std::vector<DebateTranscript>(std::span<const Thread> threads)>;

/// Mac-F1 after truncating every thread to each checkpoint's post count.
/// Throws ContractError unless checkpoints are strictly increasing.
std::vector<CurvePoint> early_detection_curve(std::span<const Thread> threads,
                                              std::span<const std::size_t> checkpoints,
                                              const BatchPipeline& pipeline);

/// checkpoint,macro_f1,n_aborted
void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve);

}  // namespace stancedebate
