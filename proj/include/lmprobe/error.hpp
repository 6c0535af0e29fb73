// Copyright 2026 The lmprobe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace lmprobe {

// Stable error categories. The extern-C layer maps these 1:1 onto
// lmprobe_status codes, so values must not be reordered.
enum class StatusCode : int {
  kOk = 0,
  kIo = 1,
  kParse = 2,
  kValidation = 3,
  kCapability = 4,
  kContract = 5,
  kTemplate = 6,
  kAlignment = 7,
  kSlicing = 8,
  kTraining = 9,
  kEval = 10,
};

class Error : public std::runtime_error {
 public:
  Error(StatusCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  StatusCode code() const noexcept { return code_; }

 private:
  StatusCode code_;
};

[[noreturn]] inline void fail(StatusCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool ok, StatusCode code, const std::string& message) {
  if (!ok) fail(code, message);
}

}  // namespace lmprobe
