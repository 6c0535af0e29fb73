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

#include "lmprobe/text.hpp"

#include <cctype>

#include "lmprobe/error.hpp"

namespace lmprobe {

size_t count_blank_markers(std::string_view text) {
  size_t n = 0;
  size_t pos = text.find(kBlankMarker);
  while (pos != std::string_view::npos) {
    ++n;
    pos = text.find(kBlankMarker, pos + kBlankMarker.size());
  }
  return n;
}

Substitution substitute_blank(std::string_view text,
                              std::string_view replacement) {
  const size_t n = count_blank_markers(text);
  require(n == 1, StatusCode::kContract,
          "expected exactly one \"" + std::string(kBlankMarker) +
              "\" marker, found " + std::to_string(n) + " in: " +
              std::string(text));
  const size_t pos = text.find(kBlankMarker);
  Substitution sub;
  sub.text.reserve(text.size() + replacement.size());
  sub.text.append(text.substr(0, pos));
  sub.begin = sub.text.size();
  sub.text.append(replacement);
  sub.end = sub.text.size();
  sub.text.append(text.substr(pos + kBlankMarker.size()));
  return sub;
}

std::optional<long> first_integer(std::string_view text) {
  for (size_t i = 0; i < text.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      long value = 0;
      size_t j = i;
      while (j < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[j]))) {
        value = value * 10 + (text[j] - '0');
        ++j;
      }
      return value;
    }
  }
  return std::nullopt;
}

std::string capitalize_first(std::string_view s) {
  std::string out(s);
  if (!out.empty())
    out[0] = static_cast<char>(
        std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

std::string lowercase_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

uint64_t fnv1a64(std::string_view data) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace lmprobe
