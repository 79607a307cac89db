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
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stancedebate/debate.hpp"
#include "stancedebate/gateway.hpp"
#include "stancedebate/stance.hpp"

namespace stancedebate {

enum ExitCode : int { kExitOk = 0, kExitFatal = 1, kExitPartial = 2 };

enum class AblationMode { None, NoStance, ForceSubjective, ForceNonSubjective, NoDebate };

/// "none", "no-stance", "force-sub", "force-nonsub", "no-debate".
std::optional<AblationMode> parse_ablation(std::string_view s) noexcept;

/// Clears every ablation flag, then sets the one `mode` names.
void apply_ablation(DebateConfig& cfg, AblationMode mode) noexcept;

struct RunConfig {
  BackendConfig backend;
  StanceConfig stance;
  DebateConfig debate;
  std::filesystem::path corpus;
  std::filesystem::path output_dir = "runs";
  std::filesystem::path cache_path;      // empty: in-memory cache only
  std::filesystem::path scripted_rules;  // non-empty: scripted backend instead of HTTP
  int workers = 4;
  std::uint64_t seed = 0;
  std::optional<Locale> locale;  // overrides every claim's locale

  /// Throws ConfigError.
  void validate() const;
};

/// JSON mirror of RunConfig. Absent keys keep their defaults; unknown keys
/// and wrongly typed values throw ConfigError.
RunConfig run_config_from_json(const nlohmann::json& doc);
nlohmann::json run_config_to_json(const RunConfig& cfg);
RunConfig load_run_config(const std::filesystem::path& path);

/// Command-line values; each one set here wins over the config file.
struct FlagOverrides {
  std::optional<std::filesystem::path> corpus;
  std::optional<std::filesystem::path> output_dir;
  std::optional<std::filesystem::path> cache_path;
  std::optional<std::filesystem::path> scripted_rules;
  std::optional<std::string> backend_url;
  std::optional<std::string> model;
  std::optional<std::string> scorer_model;
  std::optional<std::size_t> k;
  std::optional<int> rounds;
  std::optional<int> workers;
  std::optional<std::uint64_t> seed;
  std::optional<AblationMode> ablation;
  std::optional<Locale> locale;
};

void apply_overrides(RunConfig& cfg, const FlagOverrides& flags);

/// "0,5,10" -> {0, 5, 10}. Throws ConfigError on empty input, junk, or a
/// list that is not strictly increasing.
std::vector<std::size_t> parse_checkpoints(std::string_view text);

/// Runs detect() over `threads` on a pool of `workers` threads. Output order
/// matches input order.
std::vector<DebateTranscript> run_batch(Gateway& gateway, std::span<const Thread> threads,
                                        const DebateConfig& debate, const StanceConfig& stance,
                                        int workers);

/// Digest of everything that determines a run's results: models, sampling,
/// stance/debate settings, seed, locale, prompt digests, corpus bytes and
/// scripted rules. Paths, worker count and cache location are excluded.
std::string config_digest(const RunConfig& cfg);

/// `<output_dir>/run-<first 12 hex of config_digest>`.
std::filesystem::path run_directory(const RunConfig& cfg);

/// Transcript file name for a claim id (unsafe characters replaced).
std::string transcript_file_name(std::string_view claim_id);

// Subcommands. Diagnostics go to `err`; results land in run_directory(cfg).
int cmd_detect(const RunConfig& cfg, std::ostream& err);
int cmd_evaluate(const RunConfig& cfg, std::ostream& err);
int cmd_early(const RunConfig& cfg, std::span<const std::size_t> checkpoints, std::ostream& err);

}  // namespace stancedebate
