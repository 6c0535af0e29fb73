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

#include <functional>
#include <optional>
#include <string>

namespace lmprobe {

// Content-addressed score cache: one JSON file per entry under the cache
// root, keyed by hash(adapter id, mode, rendered input, candidate). The
// stored key is verified on read; a corrupt or mismatching entry is
// evicted (with a warning) and recomputed. Created disabled when the
// directory is empty.
class ScoreCache {
 public:
  ScoreCache() = default;  // disabled
  explicit ScoreCache(std::string dir);

  // Resolves PROBE_CACHE_DIR; disabled when unset.
  static ScoreCache from_env();

  bool enabled() const { return !dir_.empty(); }

  // `compute` is called on miss; its serialized form must round-trip
  // (non-finite doubles are encoded explicitly).
  std::string get_or_compute(const std::string& key,
                             const std::function<std::string()>& compute);

  std::optional<std::string> lookup(const std::string& key) const;
  void store(const std::string& key, const std::string& value) const;

  const std::string& dir() const { return dir_; }

 private:
  std::string entry_path(const std::string& key) const;
  std::string dir_;
};

}  // namespace lmprobe
