// Copyright 2026 The dirand contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace dirand {

enum class ErrorCode {
  invalid_input,
  invalid_config,
  out_of_range,
  not_decomposable,
  cannot_amplify,
  unsupported,
  contract_violation,
  budget_exceeded,
};

// All library failures carry an ErrorCode; the CLI maps codes onto process
// exit codes (2 config, 3 contract violation, 4 budget exceeded).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

  int exit_code() const {
    switch (code_) {
      case ErrorCode::contract_violation:
        return 3;
      case ErrorCode::budget_exceeded:
        return 4;
      default:
        return 2;
    }
  }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace dirand
