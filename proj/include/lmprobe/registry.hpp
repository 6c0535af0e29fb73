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

#include <memory>
#include <string>
#include <vector>

#include "lmprobe/scorer.hpp"

namespace lmprobe {

// Declarative adapter registry. A registry file is a JSON document:
//
//   {"adapters": [{"id": "...", "kind": "...", ...}, ...]}
//
// Kinds: uniform | tabular_unigram | tabular_bigram | scripted | ngram |
// baseline. Relative paths in entries (corpus, script_file) resolve
// against the registry file's directory. Entries may declare capability
// flags, a vocab_size cross-check, a tokenizer id and a lowercase flag.
class AdapterRegistry {
 public:
  static AdapterRegistry load(const std::string& path);

  std::vector<std::string> ids() const;
  bool has(const std::string& id) const;
  std::unique_ptr<AdapterBase> create(const std::string& id) const;

  // Builds an adapter straight from an entry document (no registry file).
  static std::unique_ptr<AdapterBase> create_from_spec(
      const std::string& spec_json, const std::string& base_dir = ".");

 private:
  std::string base_dir_;
  std::vector<std::pair<std::string, std::string>> entries_;  // id -> json
};

}  // namespace lmprobe
