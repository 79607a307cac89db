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

#include <atomic>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "stancedebate/corpus.hpp"
#include "stancedebate/digest.hpp"
#include "stancedebate/errors.hpp"
#include "stancedebate/evalx.hpp"
#include "stancedebate/prompts.hpp"
#include "stancedebate/run.hpp"
#include "stancedebate/transcript.hpp"

namespace stancedebate {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << bytes;
}

// DebateConfig as detect() should see it: seed and locale come from the run.
DebateConfig effective_debate(const RunConfig& cfg) {
  DebateConfig d = cfg.debate;
  d.seed = cfg.seed;
  d.locale_override = cfg.locale;
  return d;
}

struct Session {
  fs::path run_dir;
  std::string digest;
  CorpusLoad corpus;
  std::shared_ptr<Backend> backend;
  std::string rules_digest;
  std::unique_ptr<Gateway> gateway;
  std::string started_at;
};

// Loads the corpus and builds the gateway. Throws on anything fatal.
Session open_session(const RunConfig& cfg, std::ostream& err) {
  cfg.validate();
  Session s;
  s.started_at = utc_now();
  s.corpus = load_corpus(cfg.corpus);
  s.digest = config_digest(cfg);
  s.run_dir = run_directory(cfg);
  fs::create_directories(s.run_dir);

  if (!s.corpus.errors.empty()) {
    err << "warning: skipped " << s.corpus.skipped() << " malformed corpus line(s), see "
        << (s.run_dir / "corpus_errors.jsonl").string() << '\n';
    std::ofstream out(s.run_dir / "corpus_errors.jsonl", std::ios::trunc);
    write_error_report(out, s.corpus.errors);
  }

  const bool scripted = !cfg.scripted_rules.empty();
  if (scripted) {
    auto backend = std::make_shared<ScriptedBackend>(ScriptedBackend::load(cfg.scripted_rules));
    s.rules_digest = backend->digest();
    s.backend = std::move(backend);
  } else {
    s.backend = std::make_shared<HttpBackend>(cfg.backend);
  }
  std::shared_ptr<ResponseCache> cache =
      cfg.cache_path.empty() ? std::make_shared<ResponseCache>()
                             : std::make_shared<ResponseCache>(cfg.cache_path);
  s.gateway = std::make_unique<Gateway>(s.backend, cfg.backend, std::move(cache));
  if (!scripted) s.gateway->ping();
  return s;
}

json manifest_base(const RunConfig& cfg, const Session& s, std::string_view command) {
  json m;
  m["command"] = command;
  m["run_id"] = s.run_dir.filename().string();
  m["config_digest"] = s.digest;
  m["config"] = run_config_to_json(cfg);
  m["prompt_templates"] = TemplateSet::builtin().digests();
  m["scripted_rules_digest"] = s.rules_digest.empty() ? json(nullptr) : json(s.rules_digest);
  m["corpus"] = {{"path", cfg.corpus.string()},
                 {"sha256", sha256_hex(read_file(cfg.corpus))},
                 {"loaded", s.corpus.loaded()},
                 {"skipped", s.corpus.skipped()}};
  m["seed"] = cfg.seed;
  m["ablation"] = effective_debate(cfg).ablation_label();
  m["started_at"] = s.started_at;
  return m;
}

std::size_t count_aborted(std::span<const DebateTranscript> transcripts) {
  std::size_t n = 0;
  for (const auto& t : transcripts) n += t.aborted() ? 1 : 0;
  return n;
}

std::vector<DebateTranscript> detect_and_write(const RunConfig& cfg, Session& s) {
  auto transcripts = run_batch(*s.gateway, s.corpus.threads, effective_debate(cfg), cfg.stance,
                               cfg.workers);

  const fs::path dir = s.run_dir / "transcripts";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream errors(s.run_dir / "errors.jsonl", std::ios::trunc);
  for (const auto& t : transcripts) {
    if (t.aborted()) {
      errors << json{{"claim_id", t.claim_id},
                     {"stage", t.failure->stage},
                     {"reason", t.failure->reason},
                     {"transcript", transcript_to_json(t)}}
                    .dump()
             << '\n';
    } else {
      write_file(dir / transcript_file_name(t.claim_id), transcript_to_json(t).dump(2) + "\n");
    }
  }
  return transcripts;
}

// Transcripts from a finished detect run with the same digest, in corpus order.
std::optional<std::vector<DebateTranscript>> reuse_transcripts(const Session& s) {
  const fs::path manifest_path = s.run_dir / "manifest.json";
  if (!fs::exists(manifest_path)) return std::nullopt;
  auto manifest = json::parse(read_file(manifest_path), nullptr, false);
  if (manifest.is_discarded() || manifest.value("config_digest", "") != s.digest ||
      !manifest.value("detect_complete", false)) {
    return std::nullopt;
  }

  std::map<std::string, DebateTranscript> aborted;
  if (fs::exists(s.run_dir / "errors.jsonl")) {
    std::ifstream in(s.run_dir / "errors.jsonl");
    std::string line;
    while (std::getline(in, line)) {
      auto rec = json::parse(line, nullptr, false);
      if (rec.is_discarded() || !rec.contains("transcript")) return std::nullopt;
      auto t = transcript_from_json(rec["transcript"]);
      aborted.emplace(t.claim_id, std::move(t));
    }
  }

  std::vector<DebateTranscript> out;
  for (const auto& thread : s.corpus.threads) {
    const auto& id = thread.claim().id();
    const fs::path file = s.run_dir / "transcripts" / transcript_file_name(id);
    if (fs::exists(file)) {
      auto doc = json::parse(read_file(file), nullptr, false);
      if (doc.is_discarded()) return std::nullopt;
      out.push_back(transcript_from_json(doc));
    } else if (auto it = aborted.find(id); it != aborted.end()) {
      out.push_back(it->second);
    } else {
      return std::nullopt;
    }
  }
  return out;
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFatal;
  }
}

}  // namespace

std::vector<DebateTranscript> run_batch(Gateway& gateway, std::span<const Thread> threads,
                                        const DebateConfig& debate, const StanceConfig& stance,
                                        int workers) {
  std::vector<DebateTranscript> out(threads.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < threads.size(); i = next++) {
      out[i] = detect(gateway, threads[i], debate, stance);
    }
  };
  const auto n_workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)),
                                               std::max<std::size_t>(threads.size(), 1));
  if (n_workers <= 1) {
    work();
    return out;
  }
  std::vector<std::jthread> pool;
  pool.reserve(n_workers);
  for (std::size_t i = 0; i < n_workers; ++i) pool.emplace_back(work);
  pool.clear();
  return out;
}

std::string config_digest(const RunConfig& cfg) {
  json roles = json::object();
  for (const auto& [role, model] : cfg.backend.role_models) {
    roles[std::string(to_string(role))] = model;
  }
  const auto full = run_config_to_json(cfg);
  json doc;
  doc["models"] = {{"model_id", cfg.backend.model_id}, {"role_models", roles}};
  doc["sampling"] = {{"temperature", cfg.backend.temperature},
                     {"max_tokens", cfg.backend.max_tokens}};
  doc["stance"] = full["stance"];
  doc["debate"] = full["debate"];
  doc["seed"] = cfg.seed;
  doc["locale"] = full["locale"];
  doc["prompts"] = TemplateSet::builtin().digests();
  doc["corpus"] = sha256_hex(read_file(cfg.corpus));
  doc["backend"] = cfg.scripted_rules.empty()
                       ? json("http")
                       : json("scripted:" + sha256_hex(read_file(cfg.scripted_rules)));
  return sha256_hex(doc.dump());
}

fs::path run_directory(const RunConfig& cfg) {
  return cfg.output_dir / ("run-" + config_digest(cfg).substr(0, 12));
}

std::string transcript_file_name(std::string_view claim_id) {
  std::string name;
  bool changed = false;
  for (char c : claim_id) {
    const bool safe = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    name += safe ? c : '_';
    changed |= !safe;
  }
  if (name.empty() || name.front() == '.') {
    name.insert(name.begin(), '_');
    changed = true;
  }
  // Distinct ids must not collide after sanitising.
  if (changed) name += "-" + sha256_hex(claim_id).substr(0, 8);
  return name + ".json";
}

int cmd_detect(const RunConfig& cfg, std::ostream& err) {
  return guarded(err, [&] {
    Session s = open_session(cfg, err);
    json manifest = manifest_base(cfg, s, "detect");
    const auto transcripts = detect_and_write(cfg, s);
    const std::size_t aborted = count_aborted(transcripts);
    manifest["claims"] = transcripts.size();
    manifest["aborted"] = aborted;
    manifest["detect_complete"] = true;
    manifest["finished_at"] = utc_now();
    write_file(s.run_dir / "manifest.json", manifest.dump(2) + "\n");
    if (aborted) err << aborted << " claim(s) aborted, see " << (s.run_dir / "errors.jsonl").string() << '\n';
    return aborted ? kExitPartial : kExitOk;
  });
}

int cmd_evaluate(const RunConfig& cfg, std::ostream& err) {
  return guarded(err, [&] {
    Session s = open_session(cfg, err);
    json manifest = manifest_base(cfg, s, "evaluate");
    std::vector<DebateTranscript> transcripts;
    if (auto reused = reuse_transcripts(s)) {
      transcripts = std::move(*reused);
      manifest["transcripts_reused"] = true;
    } else {
      transcripts = detect_and_write(cfg, s);
      manifest["transcripts_reused"] = false;
    }
    const auto report = build_report(transcripts, s.digest, effective_debate(cfg).ablation_label());
    write_file(s.run_dir / "report.json", report_to_json(report).dump(2) + "\n");
    std::ostringstream csv;
    write_report_csv(csv, report);
    write_file(s.run_dir / "report.csv", csv.str());

    manifest["claims"] = transcripts.size();
    manifest["aborted"] = report.n_aborted;
    manifest["detect_complete"] = true;
    manifest["report"] = {{"json", "report.json"}, {"csv", "report.csv"}};
    manifest["finished_at"] = utc_now();
    write_file(s.run_dir / "manifest.json", manifest.dump(2) + "\n");
    return report.n_aborted ? kExitPartial : kExitOk;
  });
}

int cmd_early(const RunConfig& cfg, std::span<const std::size_t> checkpoints, std::ostream& err) {
  return guarded(err, [&] {
    for (std::size_t i = 1; i < checkpoints.size(); ++i) {
      if (checkpoints[i] <= checkpoints[i - 1]) {
        throw ConfigError("checkpoints must be strictly increasing");
      }
    }
    if (checkpoints.empty()) throw ConfigError("at least one checkpoint is required");
    Session s = open_session(cfg, err);
    json manifest = manifest_base(cfg, s, "early");
    const DebateConfig debate = effective_debate(cfg);
    const auto curve = early_detection_curve(
        s.corpus.threads, checkpoints, [&](std::span<const Thread> threads) {
          return run_batch(*s.gateway, threads, debate, cfg.stance, cfg.workers);
        });
    std::ostringstream csv;
    write_curve_csv(csv, curve);
    write_file(s.run_dir / "early_curve.csv", csv.str());

    std::size_t aborted = 0;
    for (const auto& p : curve) aborted += p.n_aborted;
    manifest["checkpoints"] = std::vector<std::size_t>(checkpoints.begin(), checkpoints.end());
    manifest["aborted"] = aborted;
    manifest["curve"] = "early_curve.csv";
    manifest["finished_at"] = utc_now();
    write_file(s.run_dir / "manifest_early.json", manifest.dump(2) + "\n");
    return aborted ? kExitPartial : kExitOk;
  });
}

}  // namespace stancedebate
