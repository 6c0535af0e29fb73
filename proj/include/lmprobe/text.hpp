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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace lmprobe {

// Canonical blank marker used across all task data. Adapters translate it
// into their native mask or sentinel convention.
inline constexpr std::string_view kBlankMarker = "[MASK]";

size_t count_blank_markers(std::string_view text);

struct Substitution {
  std::string text;   // input with the marker replaced
  size_t begin = 0;   // character span of the replacement
  size_t end = 0;
};

// Replaces the single blank marker with `replacement`. Fails with a
// contract error unless exactly one marker is present.
Substitution substitute_blank(std::string_view text,
                              std::string_view replacement);

// First decimal integer appearing in the string, if any.
std::optional<long> first_integer(std::string_view text);

std::string capitalize_first(std::string_view s);
std::string lowercase_ascii(std::string_view s);

uint64_t fnv1a64(std::string_view data);

}  // namespace lmprobe
