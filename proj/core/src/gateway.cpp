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

#include "stancedebate/gateway.hpp"

#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "stancedebate/digest.hpp"
#include "stancedebate/errors.hpp"
#include "stancedebate/log.hpp"

namespace stancedebate {
namespace {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

nlohmann::json messages_json(const std::vector<Message>& messages) {
  auto arr = nlohmann::json::array();
  for (const auto& m : messages) {
    arr.push_back({{"role", to_string(m.speaker)}, {"content", m.text}});
  }
  return arr;
}

}  // namespace

std::string_view to_string(Speaker s) noexcept {
  switch (s) {
    case Speaker::System:
      return "system";
    case Speaker::User:
      return "user";
    case Speaker::Assistant:
      return "assistant";
  }
  return "?";
}

std::optional<Speaker> parse_speaker(std::string_view s) noexcept {
  if (s == "system") return Speaker::System;
  if (s == "user") return Speaker::User;
  if (s == "assistant") return Speaker::Assistant;
  return std::nullopt;
}

GenerationRequest::GenerationRequest(AgentRole role, std::vector<Message> messages,
                                     std::string model_id, double temperature,
                                     int max_tokens)
    : role_(role),
      messages_(std::move(messages)),
      model_id_(std::move(model_id)),
      temperature_(temperature),
      max_tokens_(max_tokens) {
  if (messages_.empty()) throw ContractError("generation request has no messages");
  if (messages_.front().speaker == Speaker::Assistant) {
    throw ContractError("generation request must open with a system or user message");
  }
  if (!(temperature_ >= 0.0 && temperature_ <= 2.0)) {
    throw ContractError("temperature must lie in [0, 2]");
  }
  if (max_tokens_ <= 0) throw ContractError("max_tokens must be positive");
}

std::string GenerationRequest::concatenated_text() const {
  std::string out;
  for (std::size_t i = 0; i < messages_.size(); ++i) {
    if (i) out += "\n\n";
    out += messages_[i].text;
  }
  return out;
}

std::string GenerationRequest::messages_digest() const {
  return sha256_hex(messages_json(messages_).dump());
}

std::string GenerationRequest::cache_key() const {
  const nlohmann::json key = {
      {"model_id", model_id_},
      {"temperature", temperature_},
      {"messages", messages_digest()},
  };
  return sha256_hex(key.dump());
}

const std::string& BackendConfig::model_for(AgentRole role) const {
  if (auto it = role_models.find(role); it != role_models.end()) return it->second;
  return model_id;
}

void BackendConfig::validate() const {
  if (max_retries < 0) throw ConfigError("max_retries must be >= 0");
  if (timeout.count() <= 0) throw ConfigError("timeout must be positive");
  if (retry_backoff.count() < 0) throw ConfigError("retry_backoff must be >= 0");
  if (!(temperature >= 0.0 && temperature <= 2.0)) {
    throw ConfigError("temperature must lie in [0, 2]");
  }
  if (max_tokens <= 0) throw ConfigError("max_tokens must be positive");
}

ResponseCache::ResponseCache(std::filesystem::path file) : file_(std::move(file)) {
  std::ifstream in(file_);
  if (!in) return;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto rec = nlohmann::json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object() || !rec.contains("key_digest") ||
        !rec["key_digest"].is_string() || !rec.contains("response_text") ||
        !rec["response_text"].is_string()) {
      log_warning("cache " + file_.string() + ":" + std::to_string(line_no) +
                  ": skipping malformed record");
      continue;
    }
    entries_.insert_or_assign(rec["key_digest"].get<std::string>(),
                              rec["response_text"].get<std::string>());
  }
}

std::optional<std::string> ResponseCache::lookup(const std::string& key) const {
  std::lock_guard lock(mutex_);
  if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  return std::nullopt;
}

void ResponseCache::store(const GenerationRequest& request, const std::string& key,
                          const std::string& response_text) {
  std::lock_guard lock(mutex_);
  auto [it, inserted] = entries_.try_emplace(key, response_text);
  if (!inserted || file_.empty()) return;
  const nlohmann::json rec = {
      {"key_digest", key},
      {"model_id", request.model_id()},
      {"temperature", request.temperature()},
      {"request_messages", messages_json(request.messages())},
      {"response_text", response_text},
      {"timestamp", utc_timestamp()},
  };
  if (file_.has_parent_path()) std::filesystem::create_directories(file_.parent_path());
  std::ofstream out(file_, std::ios::app);
  if (!out) throw IoError("cannot append to cache file " + file_.string());
  out << rec.dump() << '\n';
}

std::size_t ResponseCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

RateLimiter::RateLimiter(double requests_per_minute) {
  if (requests_per_minute > 0.0) {
    interval_ = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(60.0 / requests_per_minute));
  }
}

void RateLimiter::acquire() {
  if (interval_ == std::chrono::steady_clock::duration::zero()) return;
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard lock(mutex_);
    const auto now = std::chrono::steady_clock::now();
    slot = std::max(now, next_);
    next_ = slot + interval_;
  }
  std::this_thread::sleep_until(slot);
}

Gateway::Gateway(std::shared_ptr<Backend> backend, BackendConfig config,
                 std::shared_ptr<ResponseCache> cache)
    : backend_(std::move(backend)),
      config_(std::move(config)),
      cache_(std::move(cache)),
      limiter_(config_.requests_per_minute),
      sleeper_([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }) {
  if (!backend_) throw ContractError("gateway requires a backend");
  config_.validate();
}

GenerationRequest Gateway::make_request(AgentRole role, std::vector<Message> messages) const {
  return GenerationRequest(role, std::move(messages), config_.model_for(role),
                           config_.temperature, config_.max_tokens);
}

GenerationResult Gateway::call_with_retries(const GenerationRequest& request) {
  const int max_attempts = config_.max_retries + 1;
  for (int attempt = 1;; ++attempt) {
    limiter_.acquire();
    ++attempts_;
    const auto start = std::chrono::steady_clock::now();
    try {
      BackendReply reply = backend_->complete(request);
      const auto elapsed = std::chrono::steady_clock::now() - start;
      GenerationResult result;
      result.text = std::move(reply.text);
      result.backend_id = reply.note.empty() ? backend_->id() : backend_->id() + "#" + reply.note;
      result.latency_ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
      return result;
    } catch (const TransportError& e) {
      if (attempt >= max_attempts) {
        throw TransportError(std::string(e.what()) + " (gave up after " +
                             std::to_string(attempt) + " attempts)");
      }
      const auto backoff = config_.retry_backoff * (1LL << std::min(attempt - 1, 20));
      log_warning(std::string("transient backend failure, retrying: ") + e.what());
      sleeper_(backoff);
    }
  }
}

GenerationResult Gateway::generate(const GenerationRequest& request) {
  if (!cache_) return call_with_retries(request);

  const std::string key = request.cache_key();
  if (auto hit = cache_->lookup(key)) {
    return GenerationResult{std::move(*hit), backend_->id(), true, 0};
  }

  std::promise<GenerationResult> promise;
  std::shared_future<GenerationResult> pending;
  {
    std::lock_guard lock(inflight_mutex_);
    if (auto it = inflight_.find(key); it != inflight_.end()) {
      pending = it->second;
    } else {
      inflight_.emplace(key, promise.get_future().share());
    }
  }
  if (pending.valid()) {
    GenerationResult shared = pending.get();
    shared.cached = true;
    shared.latency_ms = 0;
    return shared;
  }

  auto finish = [&] {
    std::lock_guard lock(inflight_mutex_);
    inflight_.erase(key);
  };
  try {
    GenerationResult result = call_with_retries(request);
    cache_->store(request, key, result.text);
    promise.set_value(result);
    finish();
    return result;
  } catch (...) {
    promise.set_exception(std::current_exception());
    finish();
    throw;
  }
}

void Gateway::ping() {
  GenerationRequest request(AgentRole::Scorer, {{Speaker::User, "ping"}},
                            config_.model_for(AgentRole::Scorer), config_.temperature, 1);
  call_with_retries(request);
}

}  // namespace stancedebate
