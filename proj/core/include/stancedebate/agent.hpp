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

#include <string>
#include <vector>

#include "stancedebate/gateway.hpp"
#include "stancedebate/model.hpp"

namespace stancedebate {

/// One agent's conversation. Starts with the role's system preamble and only
/// ever grows.
class AgentState {
 public:
  /// `role` must be DebaterP, DebaterN or Judge.
  AgentState(AgentRole role, Locale locale);

  AgentRole role() const noexcept { return role_; }
  Locale locale() const noexcept { return locale_; }
  const std::vector<Message>& history() const noexcept { return history_; }

  void append(Speaker speaker, std::string text);

 private:
  AgentRole role_;
  Locale locale_;
  std::vector<Message> history_;
};

}  // namespace stancedebate
