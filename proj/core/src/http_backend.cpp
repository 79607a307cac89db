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

#include <httplib.h>

#include <cstdlib>
#include <regex>

#include "stancedebate/errors.hpp"
#include "stancedebate/gateway.hpp"

namespace stancedebate {

HttpBackend::HttpBackend(BackendConfig config) : config_(std::move(config)) {
  config_.validate();
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)", std::regex::icase);
  std::smatch m;
  if (!std::regex_match(config_.endpoint_url, m, kUrl)) {
    throw ConfigError("endpoint_url must look like http(s)://host[:port]/path, got '" +
                      config_.endpoint_url + "'");
  }
  scheme_host_port_ = m[1].str();
  path_ = m[2].matched ? m[2].str() : "/";
}

std::string HttpBackend::id() const { return "http:" + config_.endpoint_url; }

nlohmann::json HttpBackend::encode(const GenerationRequest& request) const {
  const WireFormat& wire = config_.wire;
  nlohmann::json body = wire.extra_body.is_object() ? wire.extra_body : nlohmann::json::object();
  auto messages = nlohmann::json::array();
  for (const auto& m : request.messages()) {
    messages.push_back({{wire.role_field, to_string(m.speaker)}, {wire.content_field, m.text}});
  }
  body[wire.model_field] = request.model_id();
  body[wire.messages_field] = std::move(messages);
  body[wire.temperature_field] = request.temperature();
  body[wire.max_tokens_field] = request.max_tokens();
  return body;
}

std::string HttpBackend::decode(std::string_view body) const {
  auto doc = nlohmann::json::parse(body, nullptr, false);
  if (doc.is_discarded()) throw BackendRefusal("backend returned a non-JSON body");
  const nlohmann::json::json_pointer ptr(config_.wire.response_text_pointer);
  if (!doc.contains(ptr) || !doc.at(ptr).is_string()) {
    throw BackendRefusal("backend response has no text at " +
                         config_.wire.response_text_pointer);
  }
  std::string text = doc.at(ptr).get<std::string>();
  if (text.empty()) throw BackendRefusal("backend returned an empty generation");
  return text;
}

BackendReply HttpBackend::complete(const GenerationRequest& request) {
  httplib::Client client(scheme_host_port_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
  const auto usecs =
      std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  httplib::Headers headers;
  if (!config_.auth_token_env_var.empty()) {
    if (const char* token = std::getenv(config_.auth_token_env_var.c_str()); token && *token) {
      headers.emplace("Authorization", std::string("Bearer ") + token);
    }
  }

  const std::string body = encode(request).dump();
  auto res = client.Post(path_, headers, body, "application/json");
  if (!res) {
    throw TransportError("request to " + config_.endpoint_url +
                         " failed: " + httplib::to_string(res.error()));
  }
  const int status = res->status;
  if (status == 401 || status == 403) {
    throw AuthError("backend rejected credentials (HTTP " + std::to_string(status) + ")");
  }
  if (status == 408 || status == 429 || status >= 500) {
    throw TransportError("backend returned HTTP " + std::to_string(status));
  }
  if (status < 200 || status >= 300) {
    throw BackendRefusal("backend returned HTTP " + std::to_string(status) + ": " +
                         res->body.substr(0, 200));
  }
  return BackendReply{decode(res->body), {}};
}

}  // namespace stancedebate
