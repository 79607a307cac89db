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

#include <charconv>
#include <fstream>
#include <set>

#include "stancedebate/errors.hpp"
#include "stancedebate/run.hpp"

namespace stancedebate {
namespace {

using nlohmann::json;

// Reads doc[key] into `out` when present; type mismatches become ConfigError.
template <typename T>
void read(const json& doc, const char* key, T& out) {
  if (!doc.contains(key) || doc[key].is_null()) return;
  try {
    out = doc[key].get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config field '") + key + "' has the wrong type");
  }
}

void read_path(const json& doc, const char* key, std::filesystem::path& out) {
  std::string s;
  read(doc, key, s);
  if (doc.contains(key) && !doc[key].is_null()) out = s;
}

void read_ms(const json& doc, const char* key, std::chrono::milliseconds& out) {
  std::int64_t ms = out.count();
  read(doc, key, ms);
  out = std::chrono::milliseconds(ms);
}

void reject_unknown(const json& doc, std::string_view where, std::set<std::string> known) {
  if (!doc.is_object()) throw ConfigError(std::string(where) + " must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (!known.contains(key)) {
      throw ConfigError("unknown config key '" + std::string(where) + "." + key + "'");
    }
  }
}

WireFormat wire_from_json(const json& doc) {
  reject_unknown(doc, "backend.wire",
                 {"model_field", "messages_field", "role_field", "content_field",
                  "temperature_field", "max_tokens_field", "response_text_pointer", "extra_body"});
  WireFormat w;
  read(doc, "model_field", w.model_field);
  read(doc, "messages_field", w.messages_field);
  read(doc, "role_field", w.role_field);
  read(doc, "content_field", w.content_field);
  read(doc, "temperature_field", w.temperature_field);
  read(doc, "max_tokens_field", w.max_tokens_field);
  read(doc, "response_text_pointer", w.response_text_pointer);
  if (doc.contains("extra_body")) {
    if (!doc["extra_body"].is_object()) throw ConfigError("backend.wire.extra_body must be an object");
    w.extra_body = doc["extra_body"];
  }
  return w;
}

json wire_to_json(const WireFormat& w) {
  return {{"model_field", w.model_field},
          {"messages_field", w.messages_field},
          {"role_field", w.role_field},
          {"content_field", w.content_field},
          {"temperature_field", w.temperature_field},
          {"max_tokens_field", w.max_tokens_field},
          {"response_text_pointer", w.response_text_pointer},
          {"extra_body", w.extra_body}};
}

BackendConfig backend_from_json(const json& doc) {
  reject_unknown(doc, "backend",
                 {"endpoint_url", "auth_token_env_var", "model_id", "role_models", "timeout_ms",
                  "max_retries", "retry_backoff_ms", "temperature", "max_tokens",
                  "requests_per_minute", "wire"});
  BackendConfig b;
  read(doc, "endpoint_url", b.endpoint_url);
  read(doc, "auth_token_env_var", b.auth_token_env_var);
  read(doc, "model_id", b.model_id);
  if (doc.contains("role_models")) {
    if (!doc["role_models"].is_object()) throw ConfigError("backend.role_models must be an object");
    for (const auto& [role_name, model] : doc["role_models"].items()) {
      auto role = parse_agent_role(role_name);
      if (!role || !model.is_string()) {
        throw ConfigError("bad backend.role_models entry '" + role_name + "'");
      }
      b.role_models[*role] = model.get<std::string>();
    }
  }
  read_ms(doc, "timeout_ms", b.timeout);
  read(doc, "max_retries", b.max_retries);
  read_ms(doc, "retry_backoff_ms", b.retry_backoff);
  read(doc, "temperature", b.temperature);
  read(doc, "max_tokens", b.max_tokens);
  read(doc, "requests_per_minute", b.requests_per_minute);
  if (doc.contains("wire")) b.wire = wire_from_json(doc["wire"]);
  return b;
}

json backend_to_json(const BackendConfig& b) {
  json roles = json::object();
  for (const auto& [role, model] : b.role_models) roles[std::string(to_string(role))] = model;
  return {{"endpoint_url", b.endpoint_url},
          {"auth_token_env_var", b.auth_token_env_var},
          {"model_id", b.model_id},
          {"role_models", std::move(roles)},
          {"timeout_ms", b.timeout.count()},
          {"max_retries", b.max_retries},
          {"retry_backoff_ms", b.retry_backoff.count()},
          {"temperature", b.temperature},
          {"max_tokens", b.max_tokens},
          {"requests_per_minute", b.requests_per_minute},
          {"wire", wire_to_json(b.wire)}};
}

}  // namespace

std::optional<AblationMode> parse_ablation(std::string_view s) noexcept {
  if (s == "none") return AblationMode::None;
  if (s == "no-stance") return AblationMode::NoStance;
  if (s == "force-sub") return AblationMode::ForceSubjective;
  if (s == "force-nonsub") return AblationMode::ForceNonSubjective;
  if (s == "no-debate") return AblationMode::NoDebate;
  return std::nullopt;
}

void apply_ablation(DebateConfig& cfg, AblationMode mode) noexcept {
  cfg.skip_stance_separation = mode == AblationMode::NoStance;
  cfg.force_subjective_prompt = mode == AblationMode::ForceSubjective;
  cfg.force_nonsubjective_prompt = mode == AblationMode::ForceNonSubjective;
  cfg.skip_debate = mode == AblationMode::NoDebate;
}

void RunConfig::validate() const {
  if (scripted_rules.empty()) backend.validate();
  if (scripted_rules.empty() && backend.endpoint_url.empty()) {
    throw ConfigError("either backend.endpoint_url or scripted_rules must be set");
  }
  stance.validate();
  debate.validate();
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (corpus.empty()) throw ConfigError("no corpus given");
  if (output_dir.empty()) throw ConfigError("no output directory given");
}

RunConfig run_config_from_json(const json& doc) {
  reject_unknown(doc, "config",
                 {"backend", "stance", "debate", "corpus", "output_dir", "cache_path",
                  "scripted_rules", "workers", "seed", "locale"});
  RunConfig cfg;
  if (doc.contains("backend")) cfg.backend = backend_from_json(doc["backend"]);
  if (doc.contains("stance")) {
    const json& s = doc["stance"];
    reject_unknown(s, "stance", {"k", "score_parse_retries", "template_id"});
    read(s, "k", cfg.stance.k);
    read(s, "score_parse_retries", cfg.stance.score_parse_retries);
    if (s.contains("template_id")) {
      std::string id;
      read(s, "template_id", id);
      auto parsed = parse_template_id(id);
      if (!parsed) throw ConfigError("unknown stance.template_id '" + id + "'");
      cfg.stance.template_id = *parsed;
    }
  }
  if (doc.contains("debate")) {
    const json& d = doc["debate"];
    reject_unknown(d, "debate",
                   {"max_rounds", "early_exit_on_consensus", "skip_stance_separation",
                    "force_subjective_prompt", "force_nonsubjective_prompt", "skip_debate"});
    read(d, "max_rounds", cfg.debate.max_rounds);
    read(d, "early_exit_on_consensus", cfg.debate.early_exit_on_consensus);
    read(d, "skip_stance_separation", cfg.debate.skip_stance_separation);
    read(d, "force_subjective_prompt", cfg.debate.force_subjective_prompt);
    read(d, "force_nonsubjective_prompt", cfg.debate.force_nonsubjective_prompt);
    read(d, "skip_debate", cfg.debate.skip_debate);
  }
  read_path(doc, "corpus", cfg.corpus);
  read_path(doc, "output_dir", cfg.output_dir);
  read_path(doc, "cache_path", cfg.cache_path);
  read_path(doc, "scripted_rules", cfg.scripted_rules);
  read(doc, "workers", cfg.workers);
  read(doc, "seed", cfg.seed);
  if (doc.contains("locale") && !doc["locale"].is_null()) {
    std::string s;
    read(doc, "locale", s);
    cfg.locale = parse_locale(s);
    if (!cfg.locale) throw ConfigError("unknown locale '" + s + "'");
  }
  cfg.debate.seed = cfg.seed;
  cfg.debate.locale_override = cfg.locale;
  return cfg;
}

json run_config_to_json(const RunConfig& cfg) {
  return {
      {"backend", backend_to_json(cfg.backend)},
      {"stance",
       {{"k", cfg.stance.k},
        {"score_parse_retries", cfg.stance.score_parse_retries},
        {"template_id", to_string(cfg.stance.template_id)}}},
      {"debate",
       {{"max_rounds", cfg.debate.max_rounds},
        {"early_exit_on_consensus", cfg.debate.early_exit_on_consensus},
        {"skip_stance_separation", cfg.debate.skip_stance_separation},
        {"force_subjective_prompt", cfg.debate.force_subjective_prompt},
        {"force_nonsubjective_prompt", cfg.debate.force_nonsubjective_prompt},
        {"skip_debate", cfg.debate.skip_debate}}},
      {"corpus", cfg.corpus.string()},
      {"output_dir", cfg.output_dir.string()},
      {"cache_path", cfg.cache_path.string()},
      {"scripted_rules", cfg.scripted_rules.string()},
      {"workers", cfg.workers},
      {"seed", cfg.seed},
      {"locale", cfg.locale ? json(to_string(*cfg.locale)) : json(nullptr)},
  };
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  auto doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("config file is not valid JSON: " + path.string());
  return run_config_from_json(doc);
}

void apply_overrides(RunConfig& cfg, const FlagOverrides& f) {
  if (f.corpus) cfg.corpus = *f.corpus;
  if (f.output_dir) cfg.output_dir = *f.output_dir;
  if (f.cache_path) cfg.cache_path = *f.cache_path;
  if (f.scripted_rules) cfg.scripted_rules = *f.scripted_rules;
  if (f.backend_url) cfg.backend.endpoint_url = *f.backend_url;
  if (f.model) cfg.backend.model_id = *f.model;
  if (f.scorer_model) cfg.backend.role_models[AgentRole::Scorer] = *f.scorer_model;
  if (f.k) cfg.stance.k = *f.k;
  if (f.rounds) cfg.debate.max_rounds = *f.rounds;
  if (f.workers) cfg.workers = *f.workers;
  if (f.seed) cfg.seed = *f.seed;
  if (f.ablation) apply_ablation(cfg.debate, *f.ablation);
  if (f.locale) cfg.locale = *f.locale;
  cfg.debate.seed = cfg.seed;
  cfg.debate.locale_override = cfg.locale;
}

std::vector<std::size_t> parse_checkpoints(std::string_view text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(start, comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw ConfigError("bad checkpoint '" + std::string(item) + "'");
    }
    if (!out.empty() && value <= out.back()) {
      throw ConfigError("checkpoints must be strictly increasing (got " + std::to_string(value) +
                        " after " + std::to_string(out.back()) + ")");
    }
    out.push_back(value);
    start = comma + 1;
  }
  return out;
}

}  // namespace stancedebate
