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

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <regex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stancedebate/model.hpp"

namespace stancedebate {

inline constexpr double kDefaultTemperature = 0.2;
inline constexpr int kDefaultMaxTokens = 1024;
inline constexpr int kDefaultMaxRetries = 3;

enum class Speaker { System, User, Assistant };

std::string_view to_string(Speaker s) noexcept;  // "system" / "user" / "assistant"
std::optional<Speaker> parse_speaker(std::string_view s) noexcept;

struct Message {
  Speaker speaker = Speaker::User;
  std::string text;

  friend bool operator==(const Message&, const Message&) = default;
};

/// One call to a text-generation backend.
///
/// Construction validates the request: the message list must be non-empty and
/// start with a System or User message, temperature must lie in [0, 2] and
/// max_tokens must be positive. Violations throw ContractError.
class GenerationRequest {
 public:
  GenerationRequest(AgentRole role, std::vector<Message> messages, std::string model_id,
                    double temperature = kDefaultTemperature,
                    int max_tokens = kDefaultMaxTokens);

  AgentRole role() const noexcept { return role_; }
  const std::vector<Message>& messages() const noexcept { return messages_; }
  const std::string& model_id() const noexcept { return model_id_; }
  double temperature() const noexcept { return temperature_; }
  int max_tokens() const noexcept { return max_tokens_; }

  /// Message texts joined by a blank line; what scripted matchers see.
  std::string concatenated_text() const;

  /// sha256 over the canonical JSON encoding of the message list.
  std::string messages_digest() const;

  /// sha256 over (model_id, temperature, messages_digest).
  std::string cache_key() const;

 private:
  AgentRole role_;
  std::vector<Message> messages_;
  std::string model_id_;
  double temperature_;
  int max_tokens_;
};

struct GenerationResult {
  std::string text;
  std::string backend_id;
  bool cached = false;
  std::int64_t latency_ms = 0;
};

/// What a backend hands back for a single attempt.
struct BackendReply {
  std::string text;
  std::string note;  // diagnostic marker, empty when nothing to report
};

/// A text-generation service. Implementations throw TransportError for
/// retryable failures, AuthError and BackendRefusal for the rest.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual std::string id() const = 0;
  virtual BackendReply complete(const GenerationRequest& request) = 0;
};

/// Field names of an OpenAI-style chat-completion body. GLM-compatible
/// servers use the same shape; anything else can be mapped here.
struct WireFormat {
  std::string model_field = "model";
  std::string messages_field = "messages";
  std::string role_field = "role";
  std::string content_field = "content";
  std::string temperature_field = "temperature";
  std::string max_tokens_field = "max_tokens";
  std::string response_text_pointer = "/choices/0/message/content";
  nlohmann::json extra_body = nlohmann::json::object();
};

struct BackendConfig {
  std::string endpoint_url;
  std::string auth_token_env_var = "LLM_API_KEY";
  std::string model_id = "gpt-3.5-turbo";
  std::map<AgentRole, std::string> role_models;
  std::chrono::milliseconds timeout{60'000};
  int max_retries = kDefaultMaxRetries;
  std::chrono::milliseconds retry_backoff{500};
  double temperature = kDefaultTemperature;
  int max_tokens = kDefaultMaxTokens;
  double requests_per_minute = 0.0;  // <= 0 disables throttling
  WireFormat wire;

  const std::string& model_for(AgentRole role) const;

  /// Throws ConfigError on a negative retry count or non-positive timeout.
  void validate() const;
};

/// POSTs chat-completion requests over HTTP(S) with bearer-token auth.
class HttpBackend final : public Backend {
 public:
  explicit HttpBackend(BackendConfig config);

  std::string id() const override;
  BackendReply complete(const GenerationRequest& request) override;

  /// Request body as sent on the wire.
  nlohmann::json encode(const GenerationRequest& request) const;

  /// Extracts the generation text from a response body. Throws
  /// BackendRefusal when the text is missing or empty.
  std::string decode(std::string_view body) const;

 private:
  BackendConfig config_;
  std::string scheme_host_port_;
  std::string path_;
};

struct ScriptRule {
  enum class Match { Substring, Regex };

  Match match = Match::Substring;
  std::string pattern;
  std::string response;
  std::optional<AgentRole> role;  // restricts the rule to one agent role

  friend bool operator==(const ScriptRule& a, const ScriptRule& b) {
    return a.match == b.match && a.pattern == b.pattern && a.response == b.response &&
           a.role == b.role;
  }
};

/// Deterministic stand-in for an LLM: the first rule whose matcher accepts
/// the request's concatenated message text supplies the reply.
///
/// Rules file (JSON):
///   {"rules": [{"contains": "...", "response": "..."},
///              {"regex": "...", "response": "...", "role": "Judge"}]}
class ScriptedBackend final : public Backend {
 public:
  static constexpr std::string_view kFallbackResponse = "Real";
  static constexpr std::string_view kNoMatchNote = "no-rule-matched";

  /// Throws ContractError when `rules` is empty or a regex fails to compile.
  explicit ScriptedBackend(std::vector<ScriptRule> rules);

  static ScriptedBackend from_json(const nlohmann::json& doc);
  static ScriptedBackend load(const std::filesystem::path& path);

  std::string id() const override { return "scripted"; }
  BackendReply complete(const GenerationRequest& request) override;

  /// Index of the first matching rule, if any.
  std::optional<std::size_t> match(const GenerationRequest& request) const;

  const std::vector<ScriptRule>& rules() const noexcept { return rules_; }
  std::string digest() const;

 private:
  std::vector<ScriptRule> rules_;
  std::vector<std::optional<std::regex>> compiled_;
};

nlohmann::json rules_to_json(std::span<const ScriptRule> rules);

/// Response cache keyed by GenerationRequest::cache_key(). With a file path
/// the cache is persisted as append-only JSONL and reloaded on construction.
class ResponseCache {
 public:
  ResponseCache() = default;
  explicit ResponseCache(std::filesystem::path file);

  std::optional<std::string> lookup(const std::string& key) const;
  void store(const GenerationRequest& request, const std::string& key,
             const std::string& response_text);
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::unordered_map<std::string, std::string> entries_;
  std::filesystem::path file_;
};

/// Token bucket refilled at `requests_per_minute`, burst of one.
class RateLimiter {
 public:
  explicit RateLimiter(double requests_per_minute);
  void acquire();

 private:
  std::mutex mutex_;
  std::chrono::steady_clock::duration interval_{};
  std::chrono::steady_clock::time_point next_{};
};

/// Front door for every LLM call: caching, retries with exponential backoff,
/// and global rate limiting. Safe for concurrent callers.
class Gateway {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  Gateway(std::shared_ptr<Backend> backend, BackendConfig config,
          std::shared_ptr<ResponseCache> cache = nullptr);

  /// Builds a request with the per-role model and the configured sampling
  /// parameters.
  GenerationRequest make_request(AgentRole role, std::vector<Message> messages) const;

  GenerationResult generate(const GenerationRequest& request);
  GenerationResult generate(AgentRole role, std::vector<Message> messages) {
    return generate(make_request(role, std::move(messages)));
  }

  /// One-token generation bypassing the cache; surfaces auth and endpoint
  /// errors before a batch starts.
  void ping();

  void set_sleeper(Sleeper sleeper) { sleeper_ = std::move(sleeper); }

  const BackendConfig& config() const noexcept { return config_; }
  const Backend& backend() const noexcept { return *backend_; }
  std::size_t backend_attempts() const noexcept { return attempts_.load(); }

 private:
  GenerationResult call_with_retries(const GenerationRequest& request);

  std::shared_ptr<Backend> backend_;
  BackendConfig config_;
  std::shared_ptr<ResponseCache> cache_;
  RateLimiter limiter_;
  Sleeper sleeper_;
  std::atomic<std::size_t> attempts_{0};

  std::mutex inflight_mutex_;
  std::unordered_map<std::string, std::shared_future<GenerationResult>> inflight_;
};

}  // namespace stancedebate
