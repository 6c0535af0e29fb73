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

#include "lmprobe/lmprobe.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <string>

#include "json.hpp"
#include "lmprobe/baselines.hpp"
#include "lmprobe/error.hpp"
#include "lmprobe/eval.hpp"
#include "lmprobe/mcqa.hpp"
#include "lmprobe/registry.hpp"
#include "lmprobe/report_io.hpp"
#include "lmprobe/stats.hpp"
#include "lmprobe/task_data.hpp"
#include "lmprobe/text.hpp"
#include "lmprobe/version.hpp"

using nlohmann::json;

namespace {

thread_local std::string g_last_error;

lmprobe_status to_status(lmprobe::StatusCode code) {
  return static_cast<lmprobe_status>(static_cast<int>(code));
}

template <typename Fn>
lmprobe_status guarded(Fn&& fn) {
  try {
    fn();
    return LMPROBE_OK;
  } catch (const lmprobe::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LMPROBE_ERR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown error";
    return LMPROBE_ERR_UNKNOWN;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void check_arg(bool ok, const char* what) {
  lmprobe::require(ok, lmprobe::StatusCode::kContract,
                   std::string("null argument: ") + what);
}

}  // namespace

// Handle definitions. Each wraps the corresponding core object.
struct lmprobe_task {
  lmprobe::ProbeTask task;
};
struct lmprobe_task_list {
  std::vector<std::pair<std::string, lmprobe::ProbeTask>> slices;
};
struct lmprobe_psych {
  std::vector<lmprobe::PsychItem> items;
};
struct lmprobe_adapter {
  std::unique_ptr<lmprobe::AdapterBase> adapter;

  lmprobe::ScorerAdapter& scorer() {
    auto* s = dynamic_cast<lmprobe::ScorerAdapter*>(adapter.get());
    lmprobe::require(s != nullptr, lmprobe::StatusCode::kCapability,
                     "adapter '" + adapter->id() + "' is not a scorer");
    return *s;
  }
};
struct lmprobe_report {
  json record;
};
struct lmprobe_head {
  lmprobe::McqaHead head;
};

extern "C" {

const char* lmprobe_version(void) { return lmprobe::kVersion; }

const char* lmprobe_last_error(void) { return g_last_error.c_str(); }

void lmprobe_string_free(char* s) { delete[] s; }

/* ---- task data ---------------------------------------------------------- */

lmprobe_status lmprobe_task_load(const char* path, const char* task_name,
                                 const char* split, const char* format,
                                 lmprobe_task** out) {
  return guarded([&] {
    check_arg(path && task_name && split && out, "task_load");
    auto handle = std::make_unique<lmprobe_task>();
    if (format == nullptr) {
      handle->task = lmprobe::load_olmpics(path, task_name,
                                           lmprobe::parse_split(split));
    } else {
      const lmprobe::TaskFormat f = std::string(format) == "MC_QA"
                                        ? lmprobe::TaskFormat::kMcQa
                                        : lmprobe::TaskFormat::kMcMlm;
      handle->task = lmprobe::load_olmpics(path, task_name,
                                           lmprobe::parse_split(split), f);
    }
    *out = handle.release();
  });
}

void lmprobe_task_free(lmprobe_task* task) { delete task; }

lmprobe_status lmprobe_task_save(const lmprobe_task* task, const char* path) {
  return guarded([&] {
    check_arg(task && path, "task_save");
    lmprobe::save_olmpics(task->task, path);
  });
}

lmprobe_status lmprobe_task_size(const lmprobe_task* task, int32_t* out) {
  return guarded([&] {
    check_arg(task && out, "task_size");
    *out = static_cast<int32_t>(task->task.questions.size());
  });
}

lmprobe_status lmprobe_task_name(const lmprobe_task* task, char** out) {
  return guarded([&] {
    check_arg(task && out, "task_name");
    *out = dup_string(task->task.name);
  });
}

lmprobe_status lmprobe_task_perturb(const lmprobe_task* task,
                                    const char* kind, lmprobe_task** out) {
  return guarded([&] {
    check_arg(task && kind && out, "task_perturb");
    auto handle = std::make_unique<lmprobe_task>();
    handle->task = lmprobe::apply_perturbation(
        task->task, lmprobe::PerturbationSpec::parse(kind));
    *out = handle.release();
  });
}

lmprobe_status lmprobe_task_apply_prompt(const lmprobe_task* task,
                                         const char* prompt_file,
                                         const char* template_name,
                                         lmprobe_task** out) {
  return guarded([&] {
    check_arg(task && prompt_file && template_name && out, "apply_prompt");
    const lmprobe::PromptSet set = lmprobe::load_prompt_set(prompt_file);
    auto handle = std::make_unique<lmprobe_task>();
    handle->task =
        lmprobe::apply_prompt_template(task->task, set.get(template_name));
    *out = handle.release();
  });
}

lmprobe_status lmprobe_prompt_template_names(const char* prompt_file,
                                             char** names_json_out) {
  return guarded([&] {
    check_arg(prompt_file && names_json_out, "prompt_template_names");
    const lmprobe::PromptSet set = lmprobe::load_prompt_set(prompt_file);
    json names = json::array();
    for (const auto& t : set.templates) names.push_back(t.name);
    *names_json_out = dup_string(names.dump());
  });
}

lmprobe_status lmprobe_task_slice_age(const lmprobe_task* task,
                                      const int32_t* edges, int32_t n_edges,
                                      lmprobe_task_list** out) {
  return guarded([&] {
    check_arg(task && edges && out, "slice_age");
    std::vector<int> e(edges, edges + n_edges);
    auto handle = std::make_unique<lmprobe_task_list>();
    handle->slices = lmprobe::slice_by_age(task->task, e);
    *out = handle.release();
  });
}

lmprobe_status lmprobe_task_list_size(const lmprobe_task_list* list,
                                      int32_t* out) {
  return guarded([&] {
    check_arg(list && out, "task_list_size");
    *out = static_cast<int32_t>(list->slices.size());
  });
}

lmprobe_status lmprobe_task_list_name(const lmprobe_task_list* list,
                                      int32_t index, char** out) {
  return guarded([&] {
    check_arg(list && out, "task_list_name");
    lmprobe::require(index >= 0 &&
                         static_cast<size_t>(index) < list->slices.size(),
                     lmprobe::StatusCode::kContract,
                     "slice index out of range");
    *out = dup_string(list->slices[index].first);
  });
}

lmprobe_status lmprobe_task_list_get(const lmprobe_task_list* list,
                                     int32_t index, lmprobe_task** out) {
  return guarded([&] {
    check_arg(list && out, "task_list_get");
    lmprobe::require(index >= 0 &&
                         static_cast<size_t>(index) < list->slices.size(),
                     lmprobe::StatusCode::kContract,
                     "slice index out of range");
    auto handle = std::make_unique<lmprobe_task>();
    handle->task = list->slices[index].second;
    *out = handle.release();
  });
}

void lmprobe_task_list_free(lmprobe_task_list* list) { delete list; }

lmprobe_status lmprobe_psych_load(const char* path, const char* subset,
                                  int check_size, lmprobe_psych** out) {
  return guarded([&] {
    check_arg(path && subset && out, "psych_load");
    auto handle = std::make_unique<lmprobe_psych>();
    handle->items = lmprobe::load_psych(
        path, lmprobe::parse_subset(subset), check_size != 0);
    *out = handle.release();
  });
}

void lmprobe_psych_free(lmprobe_psych* items) { delete items; }

lmprobe_status lmprobe_psych_size(const lmprobe_psych* items, int32_t* out) {
  return guarded([&] {
    check_arg(items && out, "psych_size");
    *out = static_cast<int32_t>(items->items.size());
  });
}

lmprobe_status lmprobe_psych_filter(const lmprobe_psych* items,
                                    const char* condition,
                                    lmprobe_psych** out) {
  return guarded([&] {
    check_arg(items && condition && out, "psych_filter");
    const std::string want(condition);
    auto handle = std::make_unique<lmprobe_psych>();
    for (const auto& item : items->items)
      if (lmprobe::to_string(item.condition) == want)
        handle->items.push_back(item);
    lmprobe::require(!handle->items.empty(), lmprobe::StatusCode::kValidation,
                     "no items with condition '" + want + "'");
    *out = handle.release();
  });
}

/* ---- adapters ----------------------------------------------------------- */

lmprobe_status lmprobe_adapter_open(const char* registry_path,
                                    const char* adapter_id,
                                    lmprobe_adapter** out) {
  return guarded([&] {
    check_arg(registry_path && adapter_id && out, "adapter_open");
    const auto registry = lmprobe::AdapterRegistry::load(registry_path);
    auto handle = std::make_unique<lmprobe_adapter>();
    handle->adapter = registry.create(adapter_id);
    *out = handle.release();
  });
}

lmprobe_status lmprobe_adapter_open_json(const char* spec_json,
                                         const char* base_dir,
                                         lmprobe_adapter** out) {
  return guarded([&] {
    check_arg(spec_json && out, "adapter_open_json");
    auto handle = std::make_unique<lmprobe_adapter>();
    handle->adapter = lmprobe::AdapterRegistry::create_from_spec(
        spec_json, base_dir ? base_dir : ".");
    *out = handle.release();
  });
}

void lmprobe_adapter_free(lmprobe_adapter* adapter) { delete adapter; }

lmprobe_status lmprobe_adapter_id(const lmprobe_adapter* adapter, char** out) {
  return guarded([&] {
    check_arg(adapter && out, "adapter_id");
    *out = dup_string(adapter->adapter->id());
  });
}

lmprobe_status lmprobe_adapter_capabilities(const lmprobe_adapter* adapter,
                                            char** json_out) {
  return guarded([&] {
    check_arg(adapter && json_out, "adapter_capabilities");
    json caps;
    if (const auto* scorer =
            dynamic_cast<const lmprobe::ScorerAdapter*>(
                adapter->adapter.get())) {
      const auto c = scorer->capabilities();
      caps["masked_fill"] = c.masked_fill;
      caps["causal"] = c.causal;
      caps["infill"] = c.infill;
      caps["full_sequence"] = c.full_sequence;
      caps["trainable_head"] = c.trainable_head;
      caps["max_batch"] = c.max_batch;
      caps["vocab_size"] = scorer->vocab().size();
      caps["kind"] = "scorer";
    } else {
      caps["kind"] = "baseline";
    }
    *json_out = dup_string(caps.dump());
  });
}

lmprobe_status lmprobe_registry_ids(const char* registry_path,
                                    char** ids_json_out) {
  return guarded([&] {
    check_arg(registry_path && ids_json_out, "registry_ids");
    const auto registry = lmprobe::AdapterRegistry::load(registry_path);
    json ids = json::array();
    for (const auto& id : registry.ids()) ids.push_back(id);
    *ids_json_out = dup_string(ids.dump());
  });
}

/* ---- custom scorer plugin ------------------------------------------------ */

namespace {

class CustomScorer final : public lmprobe::ScorerAdapter {
 public:
  CustomScorer(std::string id, const lmprobe_scorer_vtable& vt)
      : id_(std::move(id)), vt_(vt) {
    lmprobe::require(vt_.token != nullptr && vt_.vocab_size >= 1,
                     lmprobe::StatusCode::kValidation,
                     "custom scorer needs a vocabulary");
    std::vector<std::string> tokens;
    for (int32_t i = 1; i < vt_.vocab_size; ++i) {
      const char* tok = vt_.token(vt_.user_data, i);
      lmprobe::require(tok != nullptr, lmprobe::StatusCode::kValidation,
                       "custom scorer returned a null token");
      tokens.emplace_back(tok);
    }
    vocab_ = lmprobe::Vocabulary(tokens);
    lmprobe::require(capabilities().any_scoring(),
                     lmprobe::StatusCode::kValidation,
                     "custom scorer declares no scoring capability");
  }

  const std::string& id() const override { return id_; }

  lmprobe::ScorerCapabilities capabilities() const override {
    lmprobe::ScorerCapabilities caps;
    caps.masked_fill = vt_.masked_fill != nullptr;
    caps.causal = vt_.sequence_logprob != nullptr;
    caps.infill = vt_.infill_logprob != nullptr;
    caps.full_sequence = vt_.full_sequence != nullptr;
    return caps;
  }

  const lmprobe::Vocabulary& vocab() const override { return vocab_; }

  lmprobe::Tokenization tokenize(std::string_view text) const override {
    return tokenizer_.tokenize(text, vocab_);
  }

  lmprobe::TokenDistribution masked_fill(
      std::string_view text) override {
    lmprobe::TokenDistribution dist;
    dist.vocab_size = vocab_.size();
    dist.logprobs.resize(vocab_.size());
    const std::string s(text);
    lmprobe::require(
        vt_.masked_fill(vt_.user_data, s.c_str(), dist.logprobs.data()) == 0,
        lmprobe::StatusCode::kEval, "custom masked_fill callback failed");
    return dist;
  }

  double sequence_logprob(std::span<const int32_t> tokens) override {
    double out = 0.0;
    lmprobe::require(
        vt_.sequence_logprob(vt_.user_data, tokens.data(),
                             static_cast<int32_t>(tokens.size()), &out) == 0,
        lmprobe::StatusCode::kEval, "custom sequence callback failed");
    return out;
  }

  double infill_logprob(std::string_view text,
                        std::span<const int32_t> completion) override {
    double out = 0.0;
    const std::string s(text);
    lmprobe::require(
        vt_.infill_logprob(vt_.user_data, s.c_str(), completion.data(),
                           static_cast<int32_t>(completion.size()),
                           &out) == 0,
        lmprobe::StatusCode::kEval, "custom infill callback failed");
    return out;
  }

  std::vector<double> full_sequence_logprobs(
      std::string_view corrupted, std::string_view target) override {
    const std::string c(corrupted), t(target);
    const size_t n = tokenize(target).ids.size();
    std::vector<double> out(n);
    lmprobe::require(
        vt_.full_sequence(vt_.user_data, c.c_str(), t.c_str(), out.data(),
                          static_cast<int32_t>(n)) == 0,
        lmprobe::StatusCode::kEval, "custom full_sequence callback failed");
    return out;
  }

 private:
  std::string id_;
  lmprobe_scorer_vtable vt_;
  lmprobe::Vocabulary vocab_;
  lmprobe::WordPunctTokenizer tokenizer_{false};
};

}  // namespace

lmprobe_status lmprobe_adapter_create_custom(
    const char* id, const lmprobe_scorer_vtable* vtable,
    lmprobe_adapter** out) {
  return guarded([&] {
    check_arg(id && vtable && out, "adapter_create_custom");
    auto handle = std::make_unique<lmprobe_adapter>();
    handle->adapter = std::make_unique<CustomScorer>(id, *vtable);
    *out = handle.release();
  });
}

/* ---- evaluation --------------------------------------------------------- */

namespace {

lmprobe::EvalOptions parse_eval_options(const char* options_json) {
  lmprobe::EvalOptions opts;
  if (options_json == nullptr || *options_json == '\0') return opts;
  json doc;
  try {
    doc = json::parse(options_json);
  } catch (const json::exception& e) {
    lmprobe::fail(lmprobe::StatusCode::kParse,
                  std::string("bad options JSON: ") + e.what());
  }
  opts.workers = doc.value("workers", opts.workers);
  opts.use_cache = doc.value("use_cache", opts.use_cache);
  opts.cache_dir = doc.value("cache_dir", opts.cache_dir);
  if (doc.contains("bootstrap") && !doc["bootstrap"].is_null()) {
    lmprobe::BootstrapOptions b;
    b.fraction = doc["bootstrap"].value("fraction", b.fraction);
    b.n_resamples = doc["bootstrap"].value("resamples", b.n_resamples);
    b.seed = doc["bootstrap"].value("seed", b.seed);
    opts.bootstrap = b;
  }
  return opts;
}

std::optional<lmprobe::ScoringMode> parse_mode_opt(const char* mode) {
  if (mode == nullptr || std::string(mode) == "auto" ||
      std::string(mode).empty())
    return std::nullopt;
  return lmprobe::parse_scoring_mode(mode);
}

lmprobe::TrainConfig parse_train_config(const char* config_json) {
  lmprobe::TrainConfig cfg;
  if (config_json == nullptr || *config_json == '\0') return cfg;
  json doc;
  try {
    doc = json::parse(config_json);
  } catch (const json::exception& e) {
    lmprobe::fail(lmprobe::StatusCode::kParse,
                  std::string("bad train config JSON: ") + e.what());
  }
  cfg.epochs = doc.value("epochs", cfg.epochs);
  cfg.learning_rate = doc.value("learning_rate", cfg.learning_rate);
  cfg.batch_size = doc.value("batch_size", cfg.batch_size);
  cfg.seed = doc.value("seed", cfg.seed);
  cfg.max_seq_len = doc.value("max_seq_len", cfg.max_seq_len);
  cfg.patience = doc.value("patience", cfg.patience);
  return cfg;
}

}  // namespace

lmprobe_status lmprobe_eval_mc(lmprobe_adapter* adapter,
                               const lmprobe_task* task, const char* mode,
                               const char* options_json,
                               lmprobe_report** out) {
  return guarded([&] {
    check_arg(adapter && task && out, "eval_mc");
    const auto report =
        lmprobe::evaluate_mc(task->task, *adapter->adapter,
                             parse_mode_opt(mode),
                             parse_eval_options(options_json));
    auto handle = std::make_unique<lmprobe_report>();
    handle->record = lmprobe::to_record(report);
    *out = handle.release();
  });
}

lmprobe_status lmprobe_eval_topk(lmprobe_adapter* adapter,
                                 const lmprobe_psych* items, int32_t k,
                                 const char* filter_file,
                                 lmprobe_report** out) {
  return guarded([&] {
    check_arg(adapter && items && out, "eval_topk");
    std::set<std::string> filter;
    const std::set<std::string>* filter_ptr = nullptr;
    if (filter_file != nullptr && *filter_file != '\0') {
      filter = lmprobe::load_word_filter(filter_file);
      filter_ptr = &filter;
    }
    const auto report = lmprobe::evaluate_topk(items->items,
                                               adapter->scorer(), k,
                                               filter_ptr);
    auto handle = std::make_unique<lmprobe_report>();
    handle->record = lmprobe::to_record(report);
    *out = handle.release();
  });
}

lmprobe_status lmprobe_eval_sensitivity(lmprobe_adapter* adapter,
                                        const lmprobe_psych* items,
                                        lmprobe_report** out) {
  return guarded([&] {
    check_arg(adapter && items && out, "eval_sensitivity");
    const auto report =
        lmprobe::evaluate_sensitivity(items->items, adapter->scorer());
    auto handle = std::make_unique<lmprobe_report>();
    handle->record = lmprobe::to_record(report);
    *out = handle.release();
  });
}

lmprobe_status lmprobe_prediction_change_rate(lmprobe_adapter* adapter,
                                              const lmprobe_psych* items,
                                              double* out) {
  return guarded([&] {
    check_arg(adapter && items && out, "prediction_change_rate");
    *out = lmprobe::prediction_change_rate(items->items, adapter->scorer());
  });
}

lmprobe_status lmprobe_score_question(lmprobe_adapter* adapter,
                                      const char* question_json,
                                      const char* mode, char** scores_json) {
  return guarded([&] {
    check_arg(adapter && question_json && scores_json, "score_question");
    json doc;
    try {
      doc = json::parse(question_json);
    } catch (const json::exception& e) {
      lmprobe::fail(lmprobe::StatusCode::kParse,
                    std::string("bad question JSON: ") + e.what());
    }
    lmprobe::ProbeQuestion q;
    q.stem = doc.at("stem").get<std::string>();
    q.choices = doc.at("choices").get<std::vector<std::string>>();
    q.gold_index = doc.value("answer", 0);
    q.validate(lmprobe::count_blank_markers(q.stem) == 1
                   ? lmprobe::TaskFormat::kMcMlm
                   : lmprobe::TaskFormat::kMcQa);
    auto& scorer = adapter->scorer();
    const auto m = parse_mode_opt(mode);
    const auto scores = lmprobe::score_question(
        lmprobe::ensure_blank(q), scorer,
        m.value_or(lmprobe::auto_mode(scorer)));
    json out = json::array();
    for (const auto& s : scores) {
      json e;
      e["choice_index"] = s.choice_index;
      e["logprob"] = std::isfinite(s.logprob) ? json(s.logprob)
                                              : json("-inf");
      e["mode"] = lmprobe::to_string(s.mode);
      e["n_tokens"] = s.n_tokens;
      out.push_back(std::move(e));
    }
    json wrapper;
    wrapper["scores"] = std::move(out);
    wrapper["prediction"] = lmprobe::select_choice(scores);
    *scores_json = dup_string(wrapper.dump());
  });
}

lmprobe_status lmprobe_report_json(const lmprobe_report* report, char** out) {
  return guarded([&] {
    check_arg(report && out, "report_json");
    *out = dup_string(report->record.dump());
  });
}

void lmprobe_report_free(lmprobe_report* report) { delete report; }

/* ---- statistics --------------------------------------------------------- */

lmprobe_status lmprobe_bootstrap_ci(const uint8_t* correct, int32_t n,
                                    double fraction, int32_t n_resamples,
                                    uint64_t seed, double* mean_out,
                                    double* halfwidth_out,
                                    double* fullsample_halfwidth_out) {
  return guarded([&] {
    check_arg(correct != nullptr, "bootstrap_ci");
    std::vector<bool> v(correct, correct + n);
    const auto ci = lmprobe::bootstrap_ci(v, fraction, n_resamples, seed);
    if (mean_out) *mean_out = ci.mean;
    if (halfwidth_out) *halfwidth_out = ci.halfwidth;
    if (fullsample_halfwidth_out)
      *fullsample_halfwidth_out = ci.fullsample_halfwidth;
  });
}

lmprobe_status lmprobe_spearman(const double* sizes, const double* accuracies,
                                int32_t n, int32_t m_tests, double* rho_out,
                                double* p_out, int32_t* significant_out) {
  return guarded([&] {
    check_arg(sizes && accuracies, "spearman");
    std::vector<std::pair<double, double>> points;
    for (int32_t i = 0; i < n; ++i)
      points.emplace_back(sizes[i], accuracies[i]);
    const auto result = lmprobe::spearman_size_accuracy(points, m_tests);
    if (rho_out) *rho_out = result.rho;
    if (p_out) *p_out = result.p_value;
    if (significant_out)
      *significant_out = result.significant_after_bonferroni ? 1 : 0;
  });
}

lmprobe_status lmprobe_delta_histogram(const double* deltas, int32_t n,
                                       double bin_width, char** bins_json) {
  return guarded([&] {
    check_arg(deltas && bins_json, "delta_histogram");
    std::vector<double> d(deltas, deltas + n);
    json bins = json::array();
    for (const auto& bin : lmprobe::delta_histogram(d, bin_width)) {
      json b;
      b["lo"] = bin.lo;
      b["count"] = bin.count;
      bins.push_back(std::move(b));
    }
    *bins_json = dup_string(bins.dump());
  });
}

/* ---- multi-shot --------------------------------------------------------- */

lmprobe_status lmprobe_train_mcqa(lmprobe_adapter* adapter,
                                  const lmprobe_task* trainset,
                                  const char* config_json,
                                  lmprobe_head** out) {
  return guarded([&] {
    check_arg(adapter && trainset && out, "train_mcqa");
    auto handle = std::make_unique<lmprobe_head>();
    handle->head = lmprobe::train_mcqa(adapter->scorer(), trainset->task,
                                       parse_train_config(config_json));
    *out = handle.release();
  });
}

lmprobe_status lmprobe_eval_mcqa(const lmprobe_head* head,
                                 lmprobe_adapter* adapter,
                                 const lmprobe_task* task,
                                 lmprobe_report** out) {
  return guarded([&] {
    check_arg(head && adapter && task && out, "eval_mcqa");
    const auto report =
        lmprobe::evaluate_mcqa(head->head, adapter->scorer(), task->task);
    auto handle = std::make_unique<lmprobe_report>();
    handle->record = lmprobe::to_record(report);
    *out = handle.release();
  });
}

lmprobe_status lmprobe_head_save(const lmprobe_head* head, const char* path) {
  return guarded([&] {
    check_arg(head && path, "head_save");
    lmprobe::save_head(head->head, path);
  });
}

lmprobe_status lmprobe_head_load(const char* path, lmprobe_head** out) {
  return guarded([&] {
    check_arg(path && out, "head_load");
    auto handle = std::make_unique<lmprobe_head>();
    handle->head = lmprobe::load_head(path);
    *out = handle.release();
  });
}

void lmprobe_head_free(lmprobe_head* head) { delete head; }

lmprobe_status lmprobe_train_masked(lmprobe_adapter* adapter,
                                    const lmprobe_task* trainset,
                                    const char* config_json,
                                    lmprobe_adapter** out) {
  return guarded([&] {
    check_arg(adapter && trainset && out, "train_masked");
    auto handle = std::make_unique<lmprobe_adapter>();
    handle->adapter = lmprobe::train_masked(
        adapter->scorer(), trainset->task, parse_train_config(config_json));
    *out = handle.release();
  });
}

/* ---- results files ------------------------------------------------------ */

lmprobe_status lmprobe_results_append(const char* results_path,
                                      const lmprobe_report* report) {
  return guarded([&] {
    check_arg(results_path && report, "results_append");
    lmprobe::append_record(results_path, report->record);
  });
}

lmprobe_status lmprobe_results_append_json(const char* results_path,
                                           const char* record_json) {
  return guarded([&] {
    check_arg(results_path && record_json, "results_append_json");
    json record;
    try {
      record = json::parse(record_json);
    } catch (const json::exception& e) {
      lmprobe::fail(lmprobe::StatusCode::kParse,
                    std::string("bad record JSON: ") + e.what());
    }
    lmprobe::append_record(results_path, record);
  });
}

lmprobe_status lmprobe_report_aggregate(const char* results_dir,
                                        const char* out_dir,
                                        char** summary_json_out) {
  return guarded([&] {
    check_arg(results_dir && out_dir, "report_aggregate");
    const json summary = lmprobe::aggregate_reports(results_dir, out_dir);
    if (summary_json_out) *summary_json_out = dup_string(summary.dump());
  });
}

} /* extern "C" */
