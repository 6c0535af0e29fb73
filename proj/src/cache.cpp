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

#include "lmprobe/cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "lmprobe/error.hpp"
#include "lmprobe/text.hpp"

namespace lmprobe {

namespace fs = std::filesystem;
using nlohmann::json;

ScoreCache::ScoreCache(std::string dir) : dir_(std::move(dir)) {
  if (!dir_.empty()) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    require(!ec, StatusCode::kIo,
            "cannot create cache directory: " + dir_ + " (" + ec.message() +
                ")");
  }
}

ScoreCache ScoreCache::from_env() {
  const char* dir = std::getenv("PROBE_CACHE_DIR");
  return dir && *dir ? ScoreCache(dir) : ScoreCache();
}

std::string ScoreCache::entry_path(const std::string& key) const {
  std::ostringstream name;
  name << std::hex << fnv1a64(key) << ".json";
  return (fs::path(dir_) / name.str()).string();
}

std::optional<std::string> ScoreCache::lookup(const std::string& key) const {
  if (!enabled()) return std::nullopt;
  const std::string path = entry_path(key);
  std::ifstream in(path);
  if (!in.good()) return std::nullopt;
  json doc = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object() ||
      doc.value("key", "") != key || !doc.contains("value")) {
    std::cerr << "[lmprobe] warning: evicting corrupt cache entry " << path
              << "\n";
    std::error_code ec;
    fs::remove(path, ec);
    return std::nullopt;
  }
  return doc["value"].get<std::string>();
}

void ScoreCache::store(const std::string& key,
                       const std::string& value) const {
  if (!enabled()) return;
  json doc;
  doc["key"] = key;
  doc["value"] = value;
  const std::string path = entry_path(key);
  std::ofstream out(path);
  if (out.good()) out << doc.dump() << "\n";
}

std::string ScoreCache::get_or_compute(
    const std::string& key, const std::function<std::string()>& compute) {
  if (auto hit = lookup(key)) return *hit;
  std::string value = compute();
  store(key, value);
  return value;
}

}  // namespace lmprobe
