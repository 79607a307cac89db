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

#include <stdexcept>
#include <string>

namespace stancedebate {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

/// Failure talking to a text-generation backend.
class GatewayError : public Error {
 public:
  using Error::Error;
};

/// Network failure or timeout. Retried by the gateway.
class TransportError : public GatewayError {
 public:
  using GatewayError::GatewayError;
};

/// 401/403 from the backend. Never retried.
class AuthError : public GatewayError {
 public:
  using GatewayError::GatewayError;
};

/// The backend answered but produced no usable text (empty, filtered, or a
/// non-retryable client error). Never retried.
class BackendRefusal : public GatewayError {
 public:
  using GatewayError::GatewayError;
};

/// Neither "Fake" nor "Real" could be found in a generation.
class VerdictUnparseable : public Error {
 public:
  VerdictUnparseable(const std::string& what, std::string raw)
      : Error(what), raw_(std::move(raw)) {}

  const std::string& raw_text() const noexcept { return raw_; }

 private:
  std::string raw_;
};

/// One corpus line failed validation.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace stancedebate
