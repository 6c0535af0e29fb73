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

#include "lmprobe/report_io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "lmprobe/error.hpp"

namespace lmprobe {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_pct(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", value);
  return buf;
}

namespace {

json ci_to_json(const BootstrapCI& ci) {
  json out;
  out["mean"] = ci.mean;
  out["halfwidth"] = ci.halfwidth;
  out["fullsample_halfwidth"] = ci.fullsample_halfwidth;
  out["n_resamples"] = ci.n_resamples;
  out["subsample_fraction"] = ci.subsample_fraction;
  out["seed"] = ci.seed;
  out["resampling"] = "without_replacement";
  return out;
}

}  // namespace

json to_record(const TaskReport& report) {
  json out;
  out["record"] = "task_report";
  out["task"] = report.task;
  out["adapter"] = report.adapter_id;
  out["mode"] = report.mode;
  out["split"] = report.split;
  out["n"] = report.n;
  out["accuracy"] = report.accuracy;
  out["baseline"] = report.baseline;
  json correct = json::array();
  for (bool b : report.correct) correct.push_back(b ? 1 : 0);
  out["correct"] = std::move(correct);
  if (report.ci) {
    out["ci"] = ci_to_json(*report.ci);
    out["ci_halfwidth"] = report.ci->fullsample_halfwidth;
  }
  if (!report.slices.empty()) {
    json slices = json::object();
    for (const auto& [name, slice] : report.slices)
      slices[name] = to_record(slice);
    out["slices"] = std::move(slices);
  }
  return out;
}

json to_record(const SensitivityReport& report) {
  json out;
  out["record"] = "sensitivity";
  out["subset"] = report.subset;
  out["condition"] = report.condition;
  out["adapter"] = report.adapter_id;
  out["n"] = report.n;
  out["accuracy"] = report.accuracy;
  if (report.prediction_change_rate)
    out["prediction_change_rate"] = *report.prediction_change_rate;
  return out;
}

json to_record(const TopKReport& report) {
  json out;
  out["record"] = "topk";
  out["subset"] = report.subset;
  out["adapter"] = report.adapter_id;
  out["k"] = report.k;
  out["filtered"] = report.filtered;
  out["n"] = report.n;
  out["accuracy"] = report.accuracy;
  return out;
}

json to_record(const PerturbationStudy& study) {
  json out;
  out["record"] = "perturbation_study";
  json rows = json::array();
  for (const auto& row : study.rows) {
    json r;
    r["task"] = row.task;
    r["adapter"] = row.adapter_id;
    r["accuracy_before"] = row.accuracy_before;
    r["accuracy_after"] = row.accuracy_after;
    r["delta"] = row.delta;
    rows.push_back(std::move(r));
  }
  out["rows"] = std::move(rows);
  json bins = json::array();
  for (const auto& bin : study.histogram) {
    json b;
    b["lo"] = bin.lo;
    b["count"] = bin.count;
    bins.push_back(std::move(b));
  }
  out["histogram"] = std::move(bins);
  out["bin_width"] = study.bin_width;
  out["threshold"] = study.threshold;
  out["exceed_fraction"] = study.exceed_fraction;
  return out;
}

json error_record(const std::string& task, const std::string& adapter_id,
                  const std::string& message) {
  json out;
  out["record"] = "error";
  out["task"] = task;
  out["adapter"] = adapter_id;
  out["error"] = message;
  return out;
}

TaskReport task_report_from_record(const json& record) {
  TaskReport report;
  report.task = record.at("task").get<std::string>();
  report.adapter_id = record.at("adapter").get<std::string>();
  report.mode = record.at("mode").get<std::string>();
  report.split = record.value("split", "dev");
  report.n = record.at("n").get<int>();
  report.accuracy = record.at("accuracy").get<double>();
  report.baseline = record.value("baseline", 0.0);
  for (const auto& v : record.at("correct"))
    report.correct.push_back(v.get<int>() != 0);
  return report;
}

void append_record(const std::string& path, const json& record) {
  std::ofstream out(path, std::ios::app);
  require(out.good(), StatusCode::kIo, "cannot append to: " + path);
  out << record.dump() << "\n";
}

std::vector<json> read_records(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), StatusCode::kIo, "cannot open: " + path);
  std::vector<json> records;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json record = json::parse(line, nullptr, /*allow_exceptions=*/false);
    require(!record.is_discarded(), StatusCode::kParse,
            path + ":" + std::to_string(line_no) + ": bad JSON record");
    records.push_back(std::move(record));
  }
  return records;
}

namespace {

// adapter -> task -> cell text; "-" for failures
struct Grid {
  std::vector<std::string> adapters;  // row order = first appearance
  std::vector<std::string> tasks;     // column order = first appearance
  std::map<std::string, std::map<std::string, std::string>> cells;
  std::map<std::string, std::map<std::string, double>> values;

  void add(const std::string& adapter, const std::string& task,
           const std::string& text, std::optional<double> value) {
    if (std::find(adapters.begin(), adapters.end(), adapter) ==
        adapters.end())
      adapters.push_back(adapter);
    if (std::find(tasks.begin(), tasks.end(), task) == tasks.end())
      tasks.push_back(task);
    cells[adapter][task] = text;
    if (value) values[adapter][task] = *value;
  }

  bool empty() const { return adapters.empty(); }
};

void write_grid(const Grid& grid, const std::string& md_path,
                const std::string& csv_path, const std::string& title) {
  // best value per task column, for bolding (ties bold every max cell)
  std::map<std::string, double> best;
  for (const auto& task : grid.tasks) {
    for (const auto& adapter : grid.adapters) {
      auto ait = grid.values.find(adapter);
      if (ait == grid.values.end()) continue;
      auto tit = ait->second.find(task);
      if (tit == ait->second.end()) continue;
      auto bit = best.find(task);
      if (bit == best.end() || tit->second > bit->second)
        best[task] = tit->second;
    }
  }

  std::ofstream md(md_path);
  require(md.good(), StatusCode::kIo, "cannot write " + md_path);
  md << "# " << title << "\n\n";
  md << "| adapter |";
  for (const auto& task : grid.tasks) md << " " << task << " |";
  md << "\n|---|";
  for (size_t i = 0; i < grid.tasks.size(); ++i) md << "---|";
  md << "\n";
  for (const auto& adapter : grid.adapters) {
    md << "| " << adapter << " |";
    for (const auto& task : grid.tasks) {
      std::string cell = "-";
      auto ait = grid.cells.find(adapter);
      if (ait != grid.cells.end()) {
        auto tit = ait->second.find(task);
        if (tit != ait->second.end()) cell = tit->second;
      }
      bool bold = false;
      auto vit = grid.values.find(adapter);
      if (vit != grid.values.end()) {
        auto tvit = vit->second.find(task);
        if (tvit != vit->second.end() && best.count(task) &&
            tvit->second == best.at(task))
          bold = true;
      }
      md << " " << (bold ? "**" + cell + "**" : cell) << " |";
    }
    md << "\n";
  }

  std::ofstream csv(csv_path);
  require(csv.good(), StatusCode::kIo, "cannot write " + csv_path);
  csv << "adapter";
  for (const auto& task : grid.tasks) csv << "," << task;
  csv << "\n";
  for (const auto& adapter : grid.adapters) {
    csv << adapter;
    for (const auto& task : grid.tasks) {
      std::string cell = "-";
      auto ait = grid.cells.find(adapter);
      if (ait != grid.cells.end()) {
        auto tit = ait->second.find(task);
        if (tit != ait->second.end()) cell = tit->second;
      }
      csv << "," << cell;
    }
    csv << "\n";
  }
}

}  // namespace

json aggregate_reports(const std::string& results_dir,
                       const std::string& out_dir) {
  require(fs::is_directory(results_dir), StatusCode::kIo,
          "results directory does not exist: " + results_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  require(!ec, StatusCode::kIo, "cannot create output directory: " + out_dir);

  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(results_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl")
      files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());

  std::vector<json> records;
  std::vector<std::string> invalid_files;
  for (const auto& file : files) {
    try {
      for (auto& record : read_records(file)) records.push_back(record);
    } catch (const Error&) {
      invalid_files.push_back(file);
    }
  }

  Grid zero_shot, multi_shot, prompts, topk, sensitivity;
  std::vector<json> punct_records;
  std::vector<json> age_records;
  size_t n_errors = 0;

  for (const auto& record : records) {
    const std::string kind = record.value("record", "");
    if (kind == "task_report") {
      const std::string mode = record.value("mode", "");
      const std::string cell = format_pct(record.at("accuracy").get<double>());
      std::string text = cell;
      if (record.contains("ci_halfwidth"))
        text += " ±" + format_pct(record.at("ci_halfwidth").get<double>());
      Grid& grid = mode == "MC_QA" ? multi_shot : zero_shot;
      if (record.contains("template")) {
        prompts.add(record.at("adapter").get<std::string>(),
                    record.at("template").get<std::string>(), text,
                    record.at("accuracy").get<double>());
      } else {
        grid.add(record.at("adapter").get<std::string>(),
                 record.at("task").get<std::string>(), text,
                 record.at("accuracy").get<double>());
      }
      if (record.contains("slices")) age_records.push_back(record);
    } else if (kind == "sensitivity") {
      const std::string col = record.at("subset").get<std::string>() + "(" +
                              record.at("condition").get<std::string>() + ")";
      sensitivity.add(record.at("adapter").get<std::string>(), col,
                      format_pct(record.at("accuracy").get<double>()),
                      record.at("accuracy").get<double>());
    } else if (kind == "topk") {
      const std::string col =
          record.at("subset").get<std::string>() +
          (record.at("filtered").get<bool>() ? " (filtered)" : "");
      topk.add(record.at("adapter").get<std::string>(), col,
               format_pct(record.at("accuracy").get<double>()),
               record.at("accuracy").get<double>());
    } else if (kind == "perturbation_study") {
      punct_records.push_back(record);
    } else if (kind == "error") {
      ++n_errors;
      zero_shot.add(record.at("adapter").get<std::string>(),
                    record.at("task").get<std::string>(), "-", std::nullopt);
    }
  }

  const fs::path out(out_dir);
  if (!zero_shot.empty())
    write_grid(zero_shot, (out / "zero_shot.md").string(),
               (out / "zero_shot.csv").string(), "Zero-shot accuracy");
  if (!multi_shot.empty())
    write_grid(multi_shot, (out / "multi_shot.md").string(),
               (out / "multi_shot.csv").string(), "Multi-shot accuracy");
  if (!prompts.empty())
    write_grid(prompts, (out / "prompts.md").string(),
               (out / "prompts.csv").string(), "Prompt-variation accuracy");
  if (!topk.empty())
    write_grid(topk, (out / "topk.md").string(), (out / "topk.csv").string(),
               "Top-k word prediction accuracy");
  if (!sensitivity.empty())
    write_grid(sensitivity, (out / "sensitivity.md").string(),
               (out / "sensitivity.csv").string(),
               "Completion sensitivity accuracy");

  if (!punct_records.empty()) {
    std::ofstream deltas((out / "punct_deltas.csv").string());
    deltas << "task,adapter,accuracy_before,accuracy_after,delta\n";
    std::ofstream hist((out / "punct_histogram.csv").string());
    hist << "bin_lo,bin_width,count\n";
    for (const auto& record : punct_records) {
      for (const auto& row : record.at("rows")) {
        deltas << row.at("task").get<std::string>() << ","
               << row.at("adapter").get<std::string>() << ","
               << format_pct(row.at("accuracy_before").get<double>()) << ","
               << format_pct(row.at("accuracy_after").get<double>()) << ","
               << format_pct(row.at("delta").get<double>()) << "\n";
      }
      for (const auto& bin : record.at("histogram")) {
        hist << bin.at("lo").get<double>() << ","
             << record.at("bin_width").get<double>() << ","
             << bin.at("count").get<size_t>() << "\n";
      }
    }
  }

  if (!age_records.empty()) {
    std::ofstream series((out / "age_series.csv").string());
    series << "adapter,bin,n,accuracy\n";
    for (const auto& record : age_records) {
      for (const auto& [bin, slice] : record.at("slices").items()) {
        series << record.at("adapter").get<std::string>() << ",\"" << bin
               << "\"," << slice.at("n").get<int>() << ","
               << format_pct(slice.at("accuracy").get<double>()) << "\n";
      }
    }
  }

  // lossless re-emission of every record
  {
    std::ofstream all((out / "aggregated.jsonl").string());
    for (const auto& record : records) all << record.dump() << "\n";
  }

  json summary;
  summary["n_records"] = records.size();
  summary["n_files"] = files.size();
  summary["n_error_cells"] = n_errors;
  summary["invalid_files"] = invalid_files;
  return summary;
}

}  // namespace lmprobe
