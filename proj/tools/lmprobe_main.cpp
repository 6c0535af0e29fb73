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

// Command-line driver. Talks to the core exclusively through the C API.

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lmprobe/lmprobe.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(lmprobe_status status, const std::string& what) {
  if (status != LMPROBE_OK)
    throw CliError(what + ": " + lmprobe_last_error());
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  lmprobe_string_free(s);
  return out;
}

// RAII wrappers over the opaque handles.
struct TaskHandle {
  lmprobe_task* ptr = nullptr;
  ~TaskHandle() { lmprobe_task_free(ptr); }
};
struct AdapterHandle {
  lmprobe_adapter* ptr = nullptr;
  ~AdapterHandle() { lmprobe_adapter_free(ptr); }
};
struct ReportHandle {
  lmprobe_report* ptr = nullptr;
  ~ReportHandle() { lmprobe_report_free(ptr); }
};
struct HeadHandle {
  lmprobe_head* ptr = nullptr;
  ~HeadHandle() { lmprobe_head_free(ptr); }
};
struct TaskListHandle {
  lmprobe_task_list* ptr = nullptr;
  ~TaskListHandle() { lmprobe_task_list_free(ptr); }
};

uint64_t default_seed() {
  if (const char* env = std::getenv("PROBE_SEED"); env && *env)
    return std::strtoull(env, nullptr, 10);
  return 20;
}

struct CommonOpts {
  std::string registry = "data/registry.json";
  std::string data_dir = "data/olmpics";
  std::string out_dir = "out";
  std::string split = "dev";
  std::string mode = "auto";
  std::vector<std::string> adapters;
  std::vector<std::string> tasks;
  int workers = 1;
  bool no_cache = false;
  std::string cache_dir;
  uint64_t seed = default_seed();
  bool bootstrap = false;
  double bootstrap_fraction = 0.2;
  int bootstrap_resamples = 1000;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_tasks = true) {
  cmd->add_option("--registry", opts.registry, "adapter registry JSON");
  cmd->add_option("--data-dir", opts.data_dir, "task file directory");
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--adapters", opts.adapters, "registry adapter ids")
      ->delimiter(',');
  if (with_tasks)
    cmd->add_option("--tasks", opts.tasks, "task names")->delimiter(',');
  cmd->add_option("--split", opts.split, "train|dev");
  cmd->add_option("--mode", opts.mode, "auto|masked|causal|infill|fullseq");
  cmd->add_option("--workers", opts.workers, "question-level workers");
  cmd->add_flag("--no-cache", opts.no_cache, "bypass the score cache");
  cmd->add_option("--cache-dir", opts.cache_dir,
                  "cache directory (default: PROBE_CACHE_DIR)");
  cmd->add_option("--seed", opts.seed, "default seed (or PROBE_SEED)");
  cmd->add_flag("--bootstrap", opts.bootstrap,
                "attach bootstrap confidence intervals");
  cmd->add_option("--bootstrap-fraction", opts.bootstrap_fraction,
                  "subsample fraction");
  cmd->add_option("--bootstrap-resamples", opts.bootstrap_resamples,
                  "number of resamples");
}

std::string eval_options_json(const CommonOpts& opts) {
  json doc;
  doc["workers"] = opts.workers;
  doc["use_cache"] = !opts.no_cache;
  if (!opts.cache_dir.empty()) doc["cache_dir"] = opts.cache_dir;
  if (opts.bootstrap) {
    doc["bootstrap"] = {{"fraction", opts.bootstrap_fraction},
                        {"resamples", opts.bootstrap_resamples},
                        {"seed", opts.seed}};
  }
  return doc.dump();
}

std::string task_path(const CommonOpts& opts, const std::string& task) {
  return (fs::path(opts.data_dir) / (task + "_" + opts.split + ".jsonl"))
      .string();
}

void load_task(const CommonOpts& opts, const std::string& task,
               TaskHandle& handle) {
  check(lmprobe_task_load(task_path(opts, task).c_str(), task.c_str(),
                          opts.split.c_str(), nullptr, &handle.ptr),
        "loading task " + task);
}

void open_adapter(const CommonOpts& opts, const std::string& id,
                  AdapterHandle& handle) {
  check(lmprobe_adapter_open(opts.registry.c_str(), id.c_str(), &handle.ptr),
        "opening adapter " + id);
}

// Fresh records file per invocation so identical configs re-emit
// identical bytes.
std::string fresh_records_file(const CommonOpts& opts,
                               const std::string& name) {
  fs::create_directories(fs::path(opts.out_dir) / "records");
  const std::string path =
      (fs::path(opts.out_dir) / "records" / (name + ".jsonl")).string();
  std::error_code ec;
  fs::remove(path, ec);
  return path;
}

void append_report(const std::string& records_path, ReportHandle& report,
                   const json& extra = json::object()) {
  char* text = nullptr;
  check(lmprobe_report_json(report.ptr, &text), "serializing report");
  json record = json::parse(take_string(text));
  for (const auto& [k, v] : extra.items()) record[k] = v;
  check(lmprobe_results_append_json(records_path.c_str(),
                                    record.dump().c_str()),
        "writing " + records_path);
}

int aggregate(const CommonOpts& opts) {
  const std::string records = (fs::path(opts.out_dir) / "records").string();
  const std::string tables = (fs::path(opts.out_dir) / "tables").string();
  char* summary = nullptr;
  check(lmprobe_report_aggregate(records.c_str(), tables.c_str(), &summary),
        "aggregating reports");
  std::cout << "aggregate: " << take_string(summary) << "\n";
  return 0;
}

// Top-k, sensitivity and prediction-change records for the
// psycholinguistic subsets.
int run_psych(const CommonOpts& opts, const std::vector<std::string>& subsets,
              const std::string& psych_dir, int topk,
              const std::string& stopwords, const std::string& records_file) {
  int n_failures = 0;
  for (const auto& adapter_id : opts.adapters) {
    for (const auto& subset : subsets) {
      try {
        AdapterHandle adapter;
        open_adapter(opts, adapter_id, adapter);
        std::string file = subset;
        for (auto& c : file) c = static_cast<char>(std::tolower(c));
        const std::string path =
            (fs::path(psych_dir) / (file + ".tsv")).string();
        lmprobe_psych* raw = nullptr;
        check(lmprobe_psych_load(path.c_str(), subset.c_str(), 1, &raw),
              "loading " + subset);
        std::unique_ptr<lmprobe_psych, void (*)(lmprobe_psych*)> items(
            raw, lmprobe_psych_free);

        const bool neg = subset.rfind("NEG", 0) == 0;
        auto emit_topk = [&](lmprobe_psych* subset_items,
                             const char* filter) {
          ReportHandle report;
          check(lmprobe_eval_topk(adapter.ptr, subset_items, topk, filter,
                                  &report.ptr),
                "top-k on " + subset);
          append_report(records_file, report);
        };
        auto emit_sensitivity = [&](lmprobe_psych* subset_items,
                                    const json& extra) {
          ReportHandle report;
          check(lmprobe_eval_sensitivity(adapter.ptr, subset_items,
                                         &report.ptr),
                "sensitivity on " + subset);
          append_report(records_file, report, extra);
        };

        if (neg) {
          lmprobe_psych* affirmative = nullptr;
          check(lmprobe_psych_filter(items.get(), "affirmative",
                                     &affirmative),
                "filtering " + subset);
          std::unique_ptr<lmprobe_psych, void (*)(lmprobe_psych*)> aff(
              affirmative, lmprobe_psych_free);
          lmprobe_psych* negated = nullptr;
          check(lmprobe_psych_filter(items.get(), "negated", &negated),
                "filtering " + subset);
          std::unique_ptr<lmprobe_psych, void (*)(lmprobe_psych*)> negs(
              negated, lmprobe_psych_free);
          double change = 0.0;
          check(lmprobe_prediction_change_rate(adapter.ptr, items.get(),
                                               &change),
                "prediction change on " + subset);
          emit_sensitivity(aff.get(), {{"prediction_change_rate", change}});
          emit_sensitivity(negs.get(), json::object());
          emit_topk(aff.get(), nullptr);
          if (!stopwords.empty()) emit_topk(aff.get(), stopwords.c_str());
          std::cout << adapter_id << " on " << subset
                    << ": prediction change " << change << "\n";
        } else {
          emit_sensitivity(items.get(), json::object());
          emit_topk(items.get(), nullptr);
          if (!stopwords.empty()) emit_topk(items.get(), stopwords.c_str());
          std::cout << adapter_id << " on " << subset << ": top-" << topk
                    << " done\n";
        }
      } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        json err = {{"record", "error"},
                    {"task", subset},
                    {"adapter", adapter_id},
                    {"error", e.what()}};
        lmprobe_results_append_json(records_file.c_str(),
                                    err.dump().c_str());
        ++n_failures;
      }
    }
  }
  return n_failures;
}

int cmd_eval(const CommonOpts& opts, const std::vector<std::string>& psych,
             const std::string& psych_dir, int topk,
             const std::string& stopwords) {
  if ((opts.tasks.empty() && psych.empty()) || opts.adapters.empty())
    throw CliError("eval needs --adapters and --tasks or --psych");
  int n_failures = 0;
  if (!psych.empty()) {
    const std::string psych_records = fresh_records_file(opts, "psych");
    n_failures +=
        run_psych(opts, psych, psych_dir, topk, stopwords, psych_records);
  }
  if (opts.tasks.empty()) {
    aggregate(opts);
    return n_failures == 0 ? 0 : 1;
  }
  const std::string records_file = fresh_records_file(opts, "eval");
  for (const auto& adapter_id : opts.adapters) {
    for (const auto& task_name : opts.tasks) {
      try {
        AdapterHandle adapter;
        open_adapter(opts, adapter_id, adapter);
        TaskHandle task;
        load_task(opts, task_name, task);
        ReportHandle report;
        check(lmprobe_eval_mc(adapter.ptr, task.ptr, opts.mode.c_str(),
                              eval_options_json(opts).c_str(), &report.ptr),
              "evaluating " + task_name + " with " + adapter_id);
        append_report(records_file, report);
        char* text = nullptr;
        check(lmprobe_report_json(report.ptr, &text), "report json");
        const json record = json::parse(take_string(text));
        std::cout << adapter_id << " on " << task_name << " ("
                  << record.value("mode", "?")
                  << "): " << record.value("accuracy", 0.0) << " (majority "
                  << record.value("baseline", 0.0)
                  << ", n=" << record.value("n", 0) << ")\n";
      } catch (const CliError& e) {
        // a failed cell is recorded and the sweep continues
        std::cerr << "error: " << e.what() << "\n";
        json err = {{"record", "error"},
                    {"task", task_name},
                    {"adapter", adapter_id},
                    {"error", e.what()}};
        lmprobe_results_append_json(records_file.c_str(),
                                    err.dump().c_str());
        ++n_failures;
      }
    }
  }
  aggregate(opts);
  return n_failures == 0 ? 0 : 1;
}

int cmd_punct(const CommonOpts& opts, const std::string& kind,
              double threshold, double bin_width) {
  if (opts.tasks.empty() || opts.adapters.empty())
    throw CliError("punct needs --tasks and --adapters");
  const std::string records_file = fresh_records_file(opts, "punct");
  int n_failures = 0;
  std::vector<double> deltas;
  json rows = json::array();

  for (const auto& task_name : opts.tasks) {
    for (const auto& adapter_id : opts.adapters) {
      try {
        TaskHandle task;
        load_task(opts, task_name, task);
        TaskHandle perturbed;
        check(lmprobe_task_perturb(task.ptr, kind.c_str(), &perturbed.ptr),
              "perturbing " + task_name);
        AdapterHandle adapter;
        open_adapter(opts, adapter_id, adapter);
        ReportHandle before, after;
        const std::string ev = eval_options_json(opts);
        check(lmprobe_eval_mc(adapter.ptr, task.ptr, opts.mode.c_str(),
                              ev.c_str(), &before.ptr),
              "evaluating " + task_name);
        check(lmprobe_eval_mc(adapter.ptr, perturbed.ptr, opts.mode.c_str(),
                              ev.c_str(), &after.ptr),
              "evaluating perturbed " + task_name);
        char* btext = nullptr;
        char* atext = nullptr;
        check(lmprobe_report_json(before.ptr, &btext), "report json");
        check(lmprobe_report_json(after.ptr, &atext), "report json");
        const json b = json::parse(take_string(btext));
        const json a = json::parse(take_string(atext));
        const double delta =
            a.at("accuracy").get<double>() - b.at("accuracy").get<double>();
        deltas.push_back(delta);
        rows.push_back({{"task", task_name},
                        {"adapter", adapter_id},
                        {"accuracy_before", b.at("accuracy")},
                        {"accuracy_after", a.at("accuracy")},
                        {"delta", delta}});
        std::cout << adapter_id << " on " << task_name << ": "
                  << b.at("accuracy").get<double>() << " -> "
                  << a.at("accuracy").get<double>() << " (delta " << delta
                  << ")\n";
      } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        json err = {{"record", "error"},
                    {"task", task_name},
                    {"adapter", adapter_id},
                    {"error", e.what()}};
        lmprobe_results_append_json(records_file.c_str(),
                                    err.dump().c_str());
        ++n_failures;
      }
    }
  }

  json bins = json::array();
  if (!deltas.empty()) {
    char* bins_text = nullptr;
    check(lmprobe_delta_histogram(deltas.data(),
                                  static_cast<int32_t>(deltas.size()),
                                  bin_width, &bins_text),
          "histogram");
    bins = json::parse(take_string(bins_text));
  }
  size_t exceed = 0;
  for (double d : deltas)
    if (std::abs(d) > threshold) ++exceed;
  json study = {{"record", "perturbation_study"},
                {"perturbation", kind},
                {"rows", rows},
                {"histogram", bins},
                {"bin_width", bin_width},
                {"threshold", threshold},
                {"exceed_fraction",
                 deltas.empty() ? 0.0
                                : static_cast<double>(exceed) /
                                      static_cast<double>(deltas.size())}};
  check(lmprobe_results_append_json(records_file.c_str(),
                                    study.dump().c_str()),
        "writing study record");
  std::cout << "exceed fraction (|delta| > " << threshold
            << "): " << study["exceed_fraction"].get<double>() << "\n";
  aggregate(opts);
  return n_failures == 0 ? 0 : 1;
}

int cmd_prompts(const CommonOpts& opts, const std::string& prompt_file,
                const std::string& task_name) {
  if (opts.adapters.empty()) throw CliError("prompts needs --adapters");
  const std::string records_file = fresh_records_file(opts, "prompts");
  int n_failures = 0;

  char* names_text = nullptr;
  check(lmprobe_prompt_template_names(prompt_file.c_str(), &names_text),
        "reading templates");
  const json names = json::parse(take_string(names_text));

  for (const auto& jname : names) {
    const std::string tname = jname.get<std::string>();
    try {
      TaskHandle task;
      load_task(opts, task_name, task);
      TaskHandle prompted;
      check(lmprobe_task_apply_prompt(task.ptr, prompt_file.c_str(),
                                      tname.c_str(), &prompted.ptr),
            "applying template " + tname);
      for (const auto& adapter_id : opts.adapters) {
        try {
          AdapterHandle adapter;
          open_adapter(opts, adapter_id, adapter);
          ReportHandle report;
          check(lmprobe_eval_mc(adapter.ptr, prompted.ptr, opts.mode.c_str(),
                                eval_options_json(opts).c_str(),
                                &report.ptr),
                "evaluating template " + tname);
          append_report(records_file, report, {{"template", tname}});
          char* text = nullptr;
          check(lmprobe_report_json(report.ptr, &text), "report json");
          const json record = json::parse(take_string(text));
          std::cout << adapter_id << " with '" << tname
                    << "': " << record.value("accuracy", 0.0) << "\n";
        } catch (const CliError& e) {
          std::cerr << "error: " << e.what() << "\n";
          json err = {{"record", "error"},
                      {"task", tname},
                      {"adapter", adapter_id},
                      {"error", e.what()}};
          lmprobe_results_append_json(records_file.c_str(),
                                      err.dump().c_str());
          ++n_failures;
        }
      }
    } catch (const CliError& e) {
      std::cerr << "error: " << e.what() << "\n";
      ++n_failures;
    }
  }
  aggregate(opts);
  return n_failures == 0 ? 0 : 1;
}

int cmd_slice_age(const CommonOpts& opts, const std::string& task_name,
                  const std::vector<int32_t>& edges) {
  if (opts.adapters.empty()) throw CliError("slice-age needs --adapters");
  const std::string records_file = fresh_records_file(opts, "slice_age");
  int n_failures = 0;

  for (const auto& adapter_id : opts.adapters) {
    try {
      TaskHandle task;
      load_task(opts, task_name, task);
      AdapterHandle adapter;
      open_adapter(opts, adapter_id, adapter);
      ReportHandle parent;
      const std::string ev = eval_options_json(opts);
      check(lmprobe_eval_mc(adapter.ptr, task.ptr, opts.mode.c_str(),
                            ev.c_str(), &parent.ptr),
            "evaluating " + task_name);
      char* ptext = nullptr;
      check(lmprobe_report_json(parent.ptr, &ptext), "report json");
      json parent_record = json::parse(take_string(ptext));

      TaskListHandle slices;
      check(lmprobe_task_slice_age(task.ptr, edges.data(),
                                   static_cast<int32_t>(edges.size()),
                                   &slices.ptr),
            "slicing " + task_name);
      int32_t n_slices = 0;
      check(lmprobe_task_list_size(slices.ptr, &n_slices), "slice count");
      json slice_records = json::object();
      for (int32_t i = 0; i < n_slices; ++i) {
        char* name_text = nullptr;
        check(lmprobe_task_list_name(slices.ptr, i, &name_text),
              "slice name");
        const std::string bin = take_string(name_text);
        TaskHandle slice;
        check(lmprobe_task_list_get(slices.ptr, i, &slice.ptr), "slice");
        int32_t n = 0;
        check(lmprobe_task_size(slice.ptr, &n), "slice size");
        if (n == 0) continue;  // empty bins carry no accuracy
        ReportHandle report;
        check(lmprobe_eval_mc(adapter.ptr, slice.ptr, opts.mode.c_str(),
                              ev.c_str(), &report.ptr),
              "evaluating slice " + bin);
        char* stext = nullptr;
        check(lmprobe_report_json(report.ptr, &stext), "report json");
        slice_records[bin] = json::parse(take_string(stext));
        std::cout << adapter_id << " " << bin << ": "
                  << slice_records[bin].value("accuracy", 0.0)
                  << " (n=" << n << ")\n";
      }
      parent_record["slices"] = slice_records;
      check(lmprobe_results_append_json(records_file.c_str(),
                                        parent_record.dump().c_str()),
            "writing " + records_file);
    } catch (const CliError& e) {
      std::cerr << "error: " << e.what() << "\n";
      json err = {{"record", "error"},
                  {"task", task_name},
                  {"adapter", adapter_id},
                  {"error", e.what()}};
      lmprobe_results_append_json(records_file.c_str(), err.dump().c_str());
      ++n_failures;
    }
  }
  aggregate(opts);
  return n_failures == 0 ? 0 : 1;
}

int cmd_train_mcqa(const CommonOpts& opts, const std::string& task_name,
                   const std::string& objective, const json& train_cfg) {
  if (opts.adapters.size() != 1)
    throw CliError("train-mcqa needs exactly one --adapters id");
  const std::string records_file = fresh_records_file(opts, "train_mcqa");

  CommonOpts train_opts = opts;
  train_opts.split = "train";
  TaskHandle trainset;
  load_task(train_opts, task_name, trainset);
  CommonOpts dev_opts = opts;
  dev_opts.split = "dev";
  TaskHandle devset;
  load_task(dev_opts, task_name, devset);

  AdapterHandle adapter;
  open_adapter(opts, opts.adapters[0], adapter);

  ReportHandle report;
  if (objective == "head") {
    HeadHandle head;
    check(lmprobe_train_mcqa(adapter.ptr, trainset.ptr,
                             train_cfg.dump().c_str(), &head.ptr),
          "training head");
    // checkpoints live under the cache directory when one is configured
    fs::path ckpt_dir(opts.cache_dir);
    if (ckpt_dir.empty()) {
      if (const char* env = std::getenv("PROBE_CACHE_DIR"); env && *env)
        ckpt_dir = env;
    }
    if (ckpt_dir.empty()) ckpt_dir = fs::path(opts.out_dir) / "checkpoints";
    fs::create_directories(ckpt_dir);
    char* ckpt_name = nullptr;
    check(lmprobe_head_checkpoint_name(head.ptr, &ckpt_name),
          "naming checkpoint");
    const std::string ckpt = (ckpt_dir / take_string(ckpt_name)).string();
    check(lmprobe_head_save(head.ptr, ckpt.c_str()), "saving head");
    std::cout << "checkpoint: " << ckpt << "\n";
    check(lmprobe_eval_mcqa(head.ptr, adapter.ptr, devset.ptr, &report.ptr),
          "evaluating head");
  } else if (objective == "masked") {
    AdapterHandle tuned;
    check(lmprobe_train_masked(adapter.ptr, trainset.ptr,
                               train_cfg.dump().c_str(), &tuned.ptr),
          "masked fine-tuning");
    check(lmprobe_eval_mc(tuned.ptr, devset.ptr, "masked",
                          eval_options_json(opts).c_str(), &report.ptr),
          "evaluating fine-tuned adapter");
  } else {
    throw CliError("--objective must be head|masked");
  }

  append_report(records_file, report);
  char* text = nullptr;
  check(lmprobe_report_json(report.ptr, &text), "report json");
  const json record = json::parse(take_string(text));
  std::cout << "dev accuracy: " << record.value("accuracy", 0.0)
            << " (majority " << record.value("baseline", 0.0) << ")\n";
  aggregate(opts);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zero-shot and multi-shot linguistic probing harness"};
  app.require_subcommand(1);

  CommonOpts opts;

  auto* eval = app.add_subcommand("eval", "evaluate adapters on tasks");
  add_common(eval, opts);
  std::vector<std::string> psych_subsets;
  std::string psych_dir = "data/psych";
  int topk_k = 5;
  std::string stopwords_file;
  eval->add_option("--psych", psych_subsets,
                   "psycholinguistic subsets (CPRAG,ROLE,NEG_SIMP,...)")
      ->delimiter(',');
  eval->add_option("--psych-dir", psych_dir, "stimulus file directory");
  eval->add_option("--topk", topk_k, "k for top-k word prediction");
  eval->add_option("--stopwords", stopwords_file,
                   "stop-word filter for a second, filtered top-k run");

  auto* punct = app.add_subcommand(
      "punct", "accuracy deltas under sentence-final punctuation");
  add_common(punct, opts);
  std::string punct_kind = "append_period";
  double punct_threshold = 10.0;
  double punct_bin_width = 5.0;
  punct->add_option("--kind", punct_kind, "identity|append_period");
  punct->add_option("--threshold", punct_threshold,
                    "|delta| threshold for the exceed fraction");
  punct->add_option("--bin-width", punct_bin_width, "histogram bin width");

  auto* prompts =
      app.add_subcommand("prompts", "prompt-variation accuracy grid");
  add_common(prompts, opts, /*with_tasks=*/false);
  std::string prompt_file = "data/prompts/antonym_negation.json";
  std::string prompt_task = "antonym_negation";
  prompts->add_option("--templates", prompt_file, "prompt template file");
  prompts->add_option("--task", prompt_task, "task to re-render");

  auto* slice =
      app.add_subcommand("slice-age", "per-age-group accuracy series");
  add_common(slice, opts, /*with_tasks=*/false);
  std::string slice_task = "age_comparison";
  std::vector<int32_t> edges = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  slice->add_option("--task", slice_task, "age comparison task name");
  slice->add_option("--edges", edges, "bin edges")->delimiter(',');

  auto* train = app.add_subcommand("train-mcqa", "multi-shot fine-tuning");
  add_common(train, opts, /*with_tasks=*/false);
  std::string train_task = "age_comparison";
  std::string objective = "head";
  int epochs = 3;
  double lr = 0.5;
  int batch = 16;
  int max_seq_len = 64;
  int patience = 3;
  train->add_option("--task", train_task, "task to fine-tune on");
  train->add_option("--objective", objective, "head|masked");
  train->add_option("--epochs", epochs, "training epochs");
  train->add_option("--learning-rate", lr, "step size");
  train->add_option("--batch-size", batch, "batch size");
  train->add_option("--max-seq-len", max_seq_len, "input truncation");
  train->add_option("--patience", patience, "early-stop patience");

  auto* report = app.add_subcommand("report", "aggregate result records");
  std::string report_results = "out/records";
  std::string report_out = "out/tables";
  report->add_option("--results", report_results, "records directory");
  report->add_option("--out", report_out, "table output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval->parsed())
      return cmd_eval(opts, psych_subsets, psych_dir, topk_k,
                      stopwords_file);
    if (punct->parsed())
      return cmd_punct(opts, punct_kind, punct_threshold, punct_bin_width);
    if (prompts->parsed()) return cmd_prompts(opts, prompt_file, prompt_task);
    if (slice->parsed()) return cmd_slice_age(opts, slice_task, edges);
    if (train->parsed()) {
      json cfg = {{"epochs", epochs},           {"learning_rate", lr},
                  {"batch_size", batch},        {"seed", opts.seed},
                  {"max_seq_len", max_seq_len}, {"patience", patience}};
      return cmd_train_mcqa(opts, train_task, objective, cfg);
    }
    if (report->parsed()) {
      char* summary = nullptr;
      check(lmprobe_report_aggregate(report_results.c_str(),
                                     report_out.c_str(), &summary),
            "aggregating");
      std::cout << "aggregate: " << take_string(summary) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
