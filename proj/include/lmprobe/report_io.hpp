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

#include <string>
#include <vector>

#include "json.hpp"
#include "lmprobe/eval.hpp"

namespace lmprobe {

// Machine-readable result records: one JSON object per line, one record
// per (adapter, task, mode) cell. Records carry the full correct vector
// so statistics are recomputable without re-running models, and contain
// nothing run-dependent (no timestamps), so identical configs re-emit
// byte-identical files.

nlohmann::json to_record(const TaskReport& report);
nlohmann::json to_record(const SensitivityReport& report);
nlohmann::json to_record(const TopKReport& report);
nlohmann::json to_record(const PerturbationStudy& study);
nlohmann::json error_record(const std::string& task,
                            const std::string& adapter_id,
                            const std::string& message);

TaskReport task_report_from_record(const nlohmann::json& record);

void append_record(const std::string& path, const nlohmann::json& record);
std::vector<nlohmann::json> read_records(const std::string& path);

// Aggregates every *.jsonl record file under `results_dir` into
// human-readable tables (markdown + CSV, best cell per task bolded,
// failed cells rendered "-"), plot-data CSVs (accuracy-delta histogram,
// per-age-group series) and a lossless aggregated.jsonl re-emission.
// Invalid files are listed in the returned summary but do not stop the
// aggregation. Pure function of the directory contents.
nlohmann::json aggregate_reports(const std::string& results_dir,
                                 const std::string& out_dir);

// "%.1f" formatting used by every table.
std::string format_pct(double value);

}  // namespace lmprobe
