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

#include "stancedebate/evalx.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "stancedebate/corpus.hpp"
#include "stancedebate/errors.hpp"

namespace stancedebate {
namespace {

double f1(std::size_t true_pos, std::size_t false_pos, std::size_t false_neg) {
  const double predicted = static_cast<double>(true_pos + false_pos);
  const double actual = static_cast<double>(true_pos + false_neg);
  const double precision = predicted > 0 ? static_cast<double>(true_pos) / predicted : 0.0;
  const double recall = actual > 0 ? static_cast<double>(true_pos) / actual : 0.0;
  return precision + recall > 0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Fixed six-decimal rendering keeps CSV bytes stable across platforms.
std::string fixed(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

MetricScores compute_metrics(std::span<const LabelPair> pairs) {
  if (pairs.empty()) throw EmptyInput("compute_metrics needs at least one (gold, predicted) pair");
  MetricScores m;
  for (const auto& [gold, pred] : pairs) {
    if (gold == Label::Rumor) {
      (pred == Label::Rumor ? m.confusion.tp : m.confusion.fn)++;
    } else {
      (pred == Label::NonRumor ? m.confusion.tn : m.confusion.fp)++;
    }
  }
  const auto& c = m.confusion;
  m.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
  m.rumor_f1 = f1(c.tp, c.fp, c.fn);
  m.nonrumor_f1 = f1(c.tn, c.fn, c.fp);
  m.macro_f1 = (m.rumor_f1 + m.nonrumor_f1) / 2.0;
  return m;
}

EvalReport build_report(std::span<const DebateTranscript> transcripts, std::string config_digest,
                        std::string ablation) {
  EvalReport report;
  report.config_digest = std::move(config_digest);
  report.ablation = std::move(ablation);
  std::vector<LabelPair> pairs;
  for (const auto& t : transcripts) {
    ClaimRow row;
    row.claim_id = t.claim_id;
    row.gold = t.gold;
    row.aborted = t.aborted() || !t.final_verdict;
    if (!row.aborted) row.predicted = label_from_verdict(*t.final_verdict);
    row.consensus = t.consensus;
    row.judge_used = t.judge_opinion.has_value();
    row.rounds = t.rounds_run;
    if (row.aborted) {
      ++report.n_aborted;
    } else if (!row.gold) {
      ++report.n_unlabeled;
    } else {
      pairs.push_back({*row.gold, *row.predicted});
    }
    report.rows.push_back(std::move(row));
  }
  report.n_claims = pairs.size();
  if (!pairs.empty()) report.metrics = compute_metrics(pairs);
  return report;
}

nlohmann::json report_to_json(const EvalReport& report) {
  using nlohmann::json;
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"claim_id", r.claim_id},
                    {"gold", r.gold ? json(to_string(*r.gold)) : json(nullptr)},
                    {"predicted", r.predicted ? json(to_string(*r.predicted)) : json(nullptr)},
                    {"consensus", r.consensus},
                    {"judge_used", r.judge_used},
                    {"rounds", r.rounds},
                    {"aborted", r.aborted}});
  }
  json doc;
  doc["config_digest"] = report.config_digest;
  doc["ablation"] = report.ablation;
  doc["n_claims"] = report.n_claims;
  doc["n_aborted"] = report.n_aborted;
  doc["n_unlabeled"] = report.n_unlabeled;
  if (report.metrics) {
    const auto& m = *report.metrics;
    doc["accuracy"] = m.accuracy;
    doc["macro_f1"] = m.macro_f1;
    doc["rumor_f1"] = m.rumor_f1;
    doc["nonrumor_f1"] = m.nonrumor_f1;
    doc["confusion"] = {{"tp", m.confusion.tp},
                        {"fp", m.confusion.fp},
                        {"tn", m.confusion.tn},
                        {"fn", m.confusion.fn}};
  } else {
    for (const char* k : {"accuracy", "macro_f1", "rumor_f1", "nonrumor_f1", "confusion"}) {
      doc[k] = nullptr;
    }
  }
  doc["rows"] = std::move(rows);
  return doc;
}

void write_report_csv(std::ostream& out, const EvalReport& report) {
  out << "claim_id,gold,predicted,consensus,judge_used,rounds,aborted\n";
  for (const auto& r : report.rows) {
    out << csv_field(r.claim_id) << ',' << (r.gold ? to_string(*r.gold) : "") << ','
        << (r.predicted ? to_string(*r.predicted) : "") << ',' << (r.consensus ? 1 : 0) << ','
        << (r.judge_used ? 1 : 0) << ',' << r.rounds << ',' << (r.aborted ? 1 : 0) << '\n';
  }
}

std::vector<CurvePoint> early_detection_curve(std::span<const Thread> threads,
                                              std::span<const std::size_t> checkpoints,
                                              const BatchPipeline& pipeline) {
  for (std::size_t i = 1; i < checkpoints.size(); ++i) {
    if (checkpoints[i] <= checkpoints[i - 1]) {
      throw ContractError("checkpoints must be strictly increasing");
    }
  }
  std::vector<CurvePoint> curve;
  curve.reserve(checkpoints.size());
  for (std::size_t n : checkpoints) {
    std::vector<Thread> truncated;
    truncated.reserve(threads.size());
    for (const auto& t : threads) truncated.push_back(truncate_by_count(t, n));
    const auto transcripts = pipeline(truncated);
    const auto report = build_report(transcripts, {}, {});
    CurvePoint point;
    point.checkpoint = n;
    point.n_claims = report.n_claims;
    point.n_aborted = report.n_aborted;
    point.macro_f1 = report.metrics ? report.metrics->macro_f1
                                    : std::numeric_limits<double>::quiet_NaN();
    curve.push_back(point);
  }
  return curve;
}

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve) {
  out << "checkpoint,macro_f1,n_aborted\n";
  for (const auto& p : curve) {
    out << p.checkpoint << ',' << fixed(p.macro_f1) << ',' << p.n_aborted << '\n';
  }
}

}  // namespace stancedebate
