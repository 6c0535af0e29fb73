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

#include "lmprobe/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "json.hpp"
#include "lmprobe/baselines.hpp"
#include "lmprobe/error.hpp"
#include "lmprobe/task_data.hpp"
#include "lmprobe/text.hpp"

namespace lmprobe {

namespace {

using nlohmann::json;

std::string encode_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  json j = v;
  return j.dump();
}

double decode_double(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  return json::parse(s).get<double>();
}

// Per-candidate scores with caching. The cache key carries adapter id,
// mode, rendered input and candidate, so masked and infill entries never
// collide and fine-tuned adapters stay isolated from their base.
std::vector<ChoiceScore> score_with_cache(const ProbeQuestion& q,
                                          ScorerAdapter& adapter,
                                          ScoringMode mode,
                                          ScoreCache* cache,
                                          std::mutex& adapter_mutex) {
  if (cache == nullptr || !cache->enabled()) {
    std::lock_guard<std::mutex> lock(adapter_mutex);
    return score_question(q, adapter, mode);
  }
  std::vector<ChoiceScore> scores(q.choices.size());
  std::vector<size_t> missing;
  for (size_t i = 0; i < q.choices.size(); ++i) {
    json key;
    key["adapter"] = adapter.id();
    key["mode"] = to_string(mode);
    key["input"] = q.stem;
    key["candidate"] = q.choices[i];
    if (auto hit = cache->lookup(key.dump())) {
      const json v = json::parse(*hit);
      scores[i] = {static_cast<int>(i),
                   decode_double(v.at("logprob").get<std::string>()), mode,
                   v.at("n_tokens").get<int>()};
    } else {
      missing.push_back(i);
    }
  }
  if (!missing.empty()) {
    std::vector<ChoiceScore> fresh;
    {
      std::lock_guard<std::mutex> lock(adapter_mutex);
      fresh = score_question(q, adapter, mode);
    }
    for (size_t i : missing) {
      json key;
      key["adapter"] = adapter.id();
      key["mode"] = to_string(mode);
      key["input"] = q.stem;
      key["candidate"] = q.choices[i];
      json v;
      v["logprob"] = encode_double(fresh[i].logprob);
      v["n_tokens"] = fresh[i].n_tokens;
      cache->store(key.dump(), v.dump());
      scores[i] = fresh[i];
    }
  }
  return scores;
}

void fill_report_metrics(TaskReport& report, const ProbeTask& task,
                         const EvalOptions& opts) {
  report.n = static_cast<int>(task.questions.size());
  size_t n_correct = 0;
  report.correct.resize(task.questions.size());
  for (size_t i = 0; i < task.questions.size(); ++i) {
    const bool ok = report.predictions[i] == task.questions[i].gold_index;
    report.correct[i] = ok;
    n_correct += ok ? 1 : 0;
  }
  report.accuracy =
      100.0 * static_cast<double>(n_correct) / static_cast<double>(report.n);
  report.baseline = majority_baseline(task);
  if (opts.bootstrap) {
    report.ci = bootstrap_ci(report.correct, opts.bootstrap->fraction,
                             opts.bootstrap->n_resamples,
                             opts.bootstrap->seed);
  }
}

}  // namespace

double majority_baseline(const ProbeTask& task) {
  require(!task.questions.empty(), StatusCode::kEval,
          "majority baseline of an empty task");
  std::vector<size_t> counts(task.n_choices(), 0);
  for (const auto& q : task.questions) ++counts[q.gold_index];
  const size_t best = *std::max_element(counts.begin(), counts.end());
  return 100.0 * static_cast<double>(best) /
         static_cast<double>(task.questions.size());
}

ScoringMode auto_mode(const ScorerAdapter& adapter) {
  const ScorerCapabilities caps = adapter.capabilities();
  if (caps.masked_fill) return ScoringMode::kMasked;
  if (caps.infill) return ScoringMode::kInfill;
  if (caps.full_sequence) return ScoringMode::kFullSeq;
  if (caps.causal) return ScoringMode::kCausal;
  fail(StatusCode::kCapability,
       "adapter '" + adapter.id() + "' has no scoring capability");
}

TaskReport evaluate_mc(const ProbeTask& task, AdapterBase& adapter,
                       std::optional<ScoringMode> mode,
                       const EvalOptions& opts) {
  require(!task.questions.empty(), StatusCode::kEval,
          "evaluation of an empty task: " + task.name);
  TaskReport report;
  report.task = task.name;
  report.adapter_id = adapter.id();
  report.split = to_string(task.split);

  if (auto* baseline = dynamic_cast<BaselineAdapter*>(&adapter)) {
    report.mode = "BASELINE";
    report.predictions = baseline->predict(task);
    fill_report_metrics(report, task, opts);
    return report;
  }

  auto& scorer = dynamic_cast<ScorerAdapter&>(adapter);
  const ScoringMode m = mode.value_or(auto_mode(scorer));
  report.mode = to_string(m);

  ScoreCache cache = opts.cache_dir.empty() ? ScoreCache::from_env()
                                            : ScoreCache(opts.cache_dir);
  ScoreCache* cache_ptr = opts.use_cache && cache.enabled() ? &cache : nullptr;

  // Pre-render: MC-QA stems carry no blank; scoring appends one.
  std::vector<ProbeQuestion> prepared;
  prepared.reserve(task.questions.size());
  for (const auto& q : task.questions) prepared.push_back(ensure_blank(q));

  report.predictions.assign(prepared.size(), -1);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::mutex adapter_mutex;  // adapters are not assumed reentrant

  const int workers =
      std::max(1, std::min<int>(opts.workers,
                                static_cast<int>(prepared.size())));
  std::atomic<size_t> next{0};
  auto run = [&]() {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= prepared.size()) break;
      try {
        const auto scores =
            score_with_cache(prepared[i], scorer, m, cache_ptr,
                             adapter_mutex);
        report.predictions[i] = select_choice(scores);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(prepared.size());
        break;
      }
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  fill_report_metrics(report, task, opts);
  return report;
}

namespace {

TokenDistribution blank_distribution(ScorerAdapter& adapter,
                                     const std::string& context) {
  const std::string text = context + " " + std::string(kBlankMarker);
  if (adapter.capabilities().masked_fill)
    return masked_fill_logprobs(adapter, text);
  return infill_first_token_logprobs(adapter, text);
}

double completion_logprob(ScorerAdapter& adapter, const std::string& context,
                          const std::string& completion) {
  const std::string text = context + " " + std::string(kBlankMarker);
  if (adapter.capabilities().masked_fill) {
    const TokenDistribution dist = masked_fill_logprobs(adapter, text);
    const Substitution sub = substitute_blank(text, completion);
    const Tokenization tok = adapter.tokenize(sub.text);
    // first token overlapping the completion span
    for (size_t i = 0; i < tok.offsets.size(); ++i) {
      if (tok.offsets[i].begin < sub.end && tok.offsets[i].end > sub.begin)
        return dist.logprobs[tok.ids[i]];
    }
    fail(StatusCode::kAlignment,
         "completion '" + completion + "' produced no tokens");
  }
  const Tokenization tok = adapter.tokenize(completion);
  return infill_logprob(adapter, text, tok.ids);
}

}  // namespace

TopKReport evaluate_topk(const std::vector<PsychItem>& items,
                         ScorerAdapter& adapter, int k,
                         const std::set<std::string>* filter) {
  require(!items.empty(), StatusCode::kEval, "top-k over zero items");
  require(k >= 1, StatusCode::kContract, "top-k needs k >= 1");
  require(adapter.capabilities().masked_fill ||
              adapter.capabilities().infill,
          StatusCode::kCapability,
          "top-k needs masked_fill or infill capability");

  // token ids kept after filtering (by surface form, case-insensitive)
  std::vector<int32_t> kept;
  for (int32_t v = 0; v < adapter.vocab().size(); ++v) {
    if (filter != nullptr) {
      const std::string& tok = adapter.vocab().token(v);
      if (filter->count(tok) || filter->count(lowercase_ascii(tok))) continue;
    }
    kept.push_back(v);
  }
  require(static_cast<size_t>(k) <= kept.size(), StatusCode::kContract,
          "k = " + std::to_string(k) + " exceeds the post-filter vocabulary (" +
              std::to_string(kept.size()) + " tokens)");

  size_t n_correct = 0;
  for (const auto& item : items) {
    const TokenDistribution dist = blank_distribution(adapter, item.context);
    std::vector<int32_t> order = kept;
    std::stable_sort(order.begin(), order.end(),
                     [&](int32_t a, int32_t b) {
                       if (dist.logprobs[a] != dist.logprobs[b])
                         return dist.logprobs[a] > dist.logprobs[b];
                       return a < b;
                     });
    order.resize(static_cast<size_t>(k));
    bool hit = false;
    for (const auto& good : item.good_completions) {
      const Tokenization tok = adapter.tokenize(good);
      if (tok.ids.empty()) continue;
      const int32_t id = tok.ids[0];
      if (std::find(order.begin(), order.end(), id) != order.end()) {
        hit = true;
        break;
      }
    }
    n_correct += hit ? 1 : 0;
  }

  TopKReport report;
  report.subset = items.empty() ? "" : to_string(items.front().subset);
  report.adapter_id = adapter.id();
  report.k = k;
  report.filtered = filter != nullptr;
  report.n = static_cast<int>(items.size());
  report.accuracy =
      100.0 * static_cast<double>(n_correct) / static_cast<double>(items.size());
  return report;
}

SensitivityReport evaluate_sensitivity(const std::vector<PsychItem>& items,
                                       ScorerAdapter& adapter) {
  require(!items.empty(), StatusCode::kEval, "sensitivity over zero items");
  size_t n_correct = 0;
  for (const auto& item : items) {
    require(!item.good_completions.empty() && !item.bad_completions.empty(),
            StatusCode::kValidation,
            "item lacks good or bad completions: " + item.context);
    double min_good = std::numeric_limits<double>::infinity();
    for (const auto& g : item.good_completions)
      min_good = std::min(min_good,
                          completion_logprob(adapter, item.context, g));
    double max_bad = -std::numeric_limits<double>::infinity();
    for (const auto& b : item.bad_completions)
      max_bad = std::max(max_bad,
                         completion_logprob(adapter, item.context, b));
    if (min_good > max_bad) ++n_correct;  // strict dominance
  }
  SensitivityReport report;
  report.subset = to_string(items.front().subset);
  report.condition = to_string(items.front().condition);
  for (const auto& item : items) {
    if (to_string(item.condition) != report.condition) {
      report.condition = "mixed";
      break;
    }
  }
  report.adapter_id = adapter.id();
  report.n = static_cast<int>(items.size());
  report.accuracy =
      100.0 * static_cast<double>(n_correct) / static_cast<double>(items.size());
  return report;
}

double prediction_change_rate(const std::vector<PsychItem>& items,
                              ScorerAdapter& adapter) {
  std::map<std::string, std::pair<const PsychItem*, const PsychItem*>> pairs;
  for (const auto& item : items) {
    require(!item.pair_id.empty(), StatusCode::kValidation,
            "item without pair id: " + item.context);
    auto& slot = pairs[item.pair_id];
    if (item.condition == PsychCondition::kAffirmative) {
      require(slot.first == nullptr, StatusCode::kValidation,
              "duplicate affirmative item for pair " + item.pair_id);
      slot.first = &item;
    } else if (item.condition == PsychCondition::kNegated) {
      require(slot.second == nullptr, StatusCode::kValidation,
              "duplicate negated item for pair " + item.pair_id);
      slot.second = &item;
    } else {
      fail(StatusCode::kValidation,
           "prediction change rate needs affirmative/negated items");
    }
  }
  require(!pairs.empty(), StatusCode::kEval, "no pairs to evaluate");
  size_t changed = 0;
  for (const auto& [pid, pair] : pairs) {
    require(pair.first != nullptr && pair.second != nullptr,
            StatusCode::kValidation, "pair " + pid + " is missing its twin");
    auto top1 = [&](const PsychItem& item) {
      const TokenDistribution dist =
          blank_distribution(adapter, item.context);
      int32_t best = 0;
      for (int32_t v = 1; v < dist.vocab_size; ++v)
        if (dist.logprobs[v] > dist.logprobs[best]) best = v;
      return best;
    };
    if (top1(*pair.first) != top1(*pair.second)) ++changed;
  }
  return 100.0 * static_cast<double>(changed) /
         static_cast<double>(pairs.size());
}

PerturbationStudy perturbation_study(
    const std::vector<const ProbeTask*>& tasks,
    const std::vector<AdapterBase*>& adapters, const PerturbationSpec& spec,
    double threshold, double bin_width, const EvalOptions& opts) {
  PerturbationStudy study;
  study.threshold = threshold;
  study.bin_width = bin_width;
  std::vector<double> deltas;
  for (const ProbeTask* task : tasks) {
    const ProbeTask perturbed = apply_perturbation(*task, spec);
    for (AdapterBase* adapter : adapters) {
      const TaskReport before = evaluate_mc(*task, *adapter, {}, opts);
      const TaskReport after = evaluate_mc(perturbed, *adapter, {}, opts);
      PerturbationRow row;
      row.task = task->name;
      row.adapter_id = adapter->id();
      row.accuracy_before = before.accuracy;
      row.accuracy_after = after.accuracy;
      row.delta = after.accuracy - before.accuracy;
      deltas.push_back(row.delta);
      study.rows.push_back(std::move(row));
    }
  }
  study.histogram = delta_histogram(deltas, bin_width);
  study.exceed_fraction = exceed_fraction(deltas, threshold);
  return study;
}

std::set<std::string> load_word_filter(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), StatusCode::kIo, "cannot open filter file: " + path);
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (!line.empty()) words.insert(line);
  }
  return words;
}

}  // namespace lmprobe
