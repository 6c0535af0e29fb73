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

#include "lmprobe/registry.hpp"

#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "lmprobe/baselines.hpp"
#include "lmprobe/error.hpp"
#include "lmprobe/mocks.hpp"
#include "lmprobe/ngram.hpp"

namespace lmprobe {
namespace {

using nlohmann::json;

std::string resolve(const std::string& base_dir, const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base_dir) / p).string();
}

ScorerCapabilities caps_from_json(const json& entry,
                                  const ScorerCapabilities& defaults) {
  ScorerCapabilities caps = defaults;
  if (entry.contains("capabilities")) {
    const json& c = entry["capabilities"];
    caps.masked_fill = c.value("masked_fill", false);
    caps.causal = c.value("causal", false);
    caps.infill = c.value("infill", false);
    caps.full_sequence = c.value("full_sequence", false);
    caps.trainable_head = c.value("trainable_head", false);
  }
  caps.max_batch = entry.value("max_batch", defaults.max_batch);
  require(caps.max_batch >= 1, StatusCode::kValidation,
          "max_batch must be positive");
  return caps;
}

std::unique_ptr<AdapterBase> build(const json& entry,
                                   const std::string& base_dir) {
  require(entry.is_object() && entry.contains("id") &&
              entry.contains("kind"),
          StatusCode::kValidation,
          "registry entries need 'id' and 'kind' fields");
  const std::string id = entry["id"].get<std::string>();
  const std::string kind = entry["kind"].get<std::string>();
  const bool lowercase = entry.value("lowercase", false);
  const std::string tokenizer = entry.value("tokenizer", "word-punct");
  require(tokenizer == "word-punct", StatusCode::kValidation,
          "adapter '" + id + "': unknown tokenizer '" + tokenizer + "'");

  std::unique_ptr<AdapterBase> adapter;
  if (kind == "uniform") {
    require(entry.contains("vocab"), StatusCode::kValidation,
            "uniform adapter '" + id + "' needs a 'vocab' list");
    adapter = std::make_unique<UniformMock>(
        id, entry["vocab"].get<std::vector<std::string>>(), lowercase);
  } else if (kind == "tabular_unigram") {
    require(entry.contains("table"), StatusCode::kValidation,
            "tabular_unigram adapter '" + id + "' needs a 'table'");
    adapter = std::make_unique<TabularUnigramMock>(
        id, entry["table"].get<std::map<std::string, double>>(), lowercase);
  } else if (kind == "tabular_bigram") {
    require(entry.contains("initial") && entry.contains("transitions"),
            StatusCode::kValidation,
            "tabular_bigram adapter '" + id +
                "' needs 'initial' and 'transitions'");
    adapter = std::make_unique<BigramMock>(
        id, entry["initial"].get<std::map<std::string, double>>(),
        entry["transitions"]
            .get<std::map<std::string, std::map<std::string, double>>>());
  } else if (kind == "scripted") {
    if (entry.contains("script_file")) {
      adapter = ScriptedMock::from_json_file(
          id, resolve(base_dir, entry["script_file"].get<std::string>()));
    } else if (entry.contains("script")) {
      adapter = ScriptedMock::from_json_text(id, entry["script"].dump());
    } else {
      fail(StatusCode::kValidation,
           "scripted adapter '" + id + "' needs 'script' or 'script_file'");
    }
  } else if (kind == "ngram") {
    require(entry.contains("corpus"), StatusCode::kValidation,
            "ngram adapter '" + id + "' needs a 'corpus' path");
    NgramLm::Options opts;
    opts.lowercase = lowercase;
    opts.alpha = entry.value("alpha", opts.alpha);
    opts.lambda = entry.value("lambda", opts.lambda);
    auto lm = NgramLm::train_from_file(
        resolve(base_dir, entry["corpus"].get<std::string>()), opts);
    ScorerCapabilities defaults;
    defaults.masked_fill = defaults.causal = defaults.infill =
        defaults.full_sequence = true;
    defaults.trainable_head = true;
    adapter = std::make_unique<NgramAdapter>(
        id, std::move(lm), caps_from_json(entry, defaults));
  } else if (kind == "baseline") {
    require(entry.contains("policy"), StatusCode::kValidation,
            "baseline adapter '" + id + "' needs a 'policy'");
    adapter = std::make_unique<BaselineAdapter>(
        id, BaselineAdapter::parse_policy(entry["policy"].get<std::string>()));
  } else {
    fail(StatusCode::kValidation,
         "unknown adapter kind '" + kind + "' for id '" + id + "'");
  }

  if (const auto* scorer = dynamic_cast<const ScorerAdapter*>(adapter.get())) {
    require(scorer->capabilities().any_scoring(), StatusCode::kValidation,
            "adapter '" + id + "' declares no scoring capability");
    if (entry.contains("vocab_size")) {
      const auto expect = entry["vocab_size"].get<int32_t>();
      require(scorer->vocab().size() == expect, StatusCode::kValidation,
              "adapter '" + id + "': vocab size is " +
                  std::to_string(scorer->vocab().size()) + ", registry says " +
                  std::to_string(expect));
    }
  }
  return adapter;
}

}  // namespace

AdapterRegistry AdapterRegistry::load(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), StatusCode::kIo, "cannot open registry: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    fail(StatusCode::kParse, path + ": " + e.what());
  }
  require(doc.contains("adapters") && doc["adapters"].is_array(),
          StatusCode::kParse, path + ": missing 'adapters' array");
  AdapterRegistry reg;
  reg.base_dir_ = std::filesystem::path(path).parent_path().string();
  if (reg.base_dir_.empty()) reg.base_dir_ = ".";
  for (const auto& entry : doc["adapters"]) {
    require(entry.contains("id"), StatusCode::kParse,
            path + ": adapter entry without id");
    reg.entries_.emplace_back(entry["id"].get<std::string>(), entry.dump());
  }
  return reg;
}

std::vector<std::string> AdapterRegistry::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, _] : entries_) out.push_back(id);
  return out;
}

bool AdapterRegistry::has(const std::string& id) const {
  for (const auto& [eid, _] : entries_)
    if (eid == id) return true;
  return false;
}

std::unique_ptr<AdapterBase> AdapterRegistry::create(
    const std::string& id) const {
  for (const auto& [eid, spec] : entries_)
    if (eid == id) return build(json::parse(spec), base_dir_);
  fail(StatusCode::kValidation, "no adapter '" + id + "' in registry");
}

std::unique_ptr<AdapterBase> AdapterRegistry::create_from_spec(
    const std::string& spec_json, const std::string& base_dir) {
  json entry;
  try {
    entry = json::parse(spec_json);
  } catch (const json::exception& e) {
    fail(StatusCode::kParse, std::string("bad adapter spec: ") + e.what());
  }
  return build(entry, base_dir);
}

}  // namespace lmprobe
