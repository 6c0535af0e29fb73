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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "lmprobe/types.hpp"

namespace lmprobe::testing {

inline std::string data_dir() {
  if (const char* env = std::getenv("LMPROBE_DATA_DIR"); env && *env)
    return env;
  return "data";
}

inline std::string data_path(const std::string& rel) {
  return (std::filesystem::path(data_dir()) / rel).string();
}

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    auto base = std::filesystem::temp_directory_path() / "lmprobe-test-XXXXXX";
    std::string tmpl = base.string();
    if (mkdtemp(tmpl.data()) == nullptr)
      throw std::runtime_error("mkdtemp failed");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::string& path() const { return path_; }
  std::string file(const std::string& name) const {
    return (std::filesystem::path(path_) / name).string();
  }

 private:
  std::string path_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

inline ProbeQuestion make_question(std::string stem,
                                   std::vector<std::string> choices,
                                   int gold) {
  ProbeQuestion q;
  q.stem = std::move(stem);
  q.choices = std::move(choices);
  q.gold_index = gold;
  return q;
}

inline ProbeTask make_task(std::string name,
                           std::vector<ProbeQuestion> questions,
                           TaskFormat format = TaskFormat::kMcMlm) {
  ProbeTask task;
  task.name = std::move(name);
  task.format = format;
  task.split = Split::kDev;
  task.questions = std::move(questions);
  return task;
}

}  // namespace lmprobe::testing
