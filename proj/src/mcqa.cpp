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

#include "lmprobe/mcqa.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "lmprobe/error.hpp"
#include "lmprobe/rng.hpp"
#include "lmprobe/text.hpp"

namespace lmprobe {

using nlohmann::json;

void TrainConfig::validate() const {
  require(epochs > 0 && learning_rate > 0.0 && batch_size > 0 &&
              max_seq_len > 0 && patience > 0,
          StatusCode::kValidation,
          "train config fields must all be positive");
}

std::string TrainConfig::fingerprint() const {
  std::ostringstream key;
  key << epochs << '|' << learning_rate << '|' << batch_size << '|' << seed
      << '|' << max_seq_len << '|' << patience;
  std::ostringstream out;
  out << std::hex << fnv1a64(key.str());
  return out.str();
}

McqaInstance render_mcqa(const ProbeQuestion& q) {
  McqaInstance instance;
  instance.gold_index = q.gold_index;
  instance.rendered_inputs.reserve(q.choices.size());
  const bool has_blank = count_blank_markers(q.stem) == 1;
  for (const auto& choice : q.choices) {
    if (has_blank) {
      instance.rendered_inputs.push_back(
          substitute_blank(q.stem, choice).text);
    } else {
      instance.rendered_inputs.push_back(q.stem + " " + choice);
    }
  }
  return instance;
}

double McqaHead::logit(
    const std::vector<std::pair<int32_t, double>>& features) const {
  double z = bias;
  for (const auto& [i, v] : features) z += weights[i] * v;
  return z;
}

namespace {

std::vector<std::pair<int32_t, double>> truncated_embedding(
    ScorerAdapter& adapter, const std::string& text, int max_seq_len) {
  // truncate by whitespace tokens before embedding
  size_t count = 0, cut = text.size();
  bool in_tok = false;
  for (size_t i = 0; i < text.size(); ++i) {
    const bool space = std::isspace(static_cast<unsigned char>(text[i]));
    if (!space && !in_tok) {
      ++count;
      if (count > static_cast<size_t>(max_seq_len)) {
        cut = i;
        break;
      }
    }
    in_tok = !space;
  }
  return adapter.pooled_embedding(std::string_view(text).substr(0, cut));
}

}  // namespace

McqaHead train_mcqa(ScorerAdapter& adapter, const ProbeTask& trainset,
                    const TrainConfig& cfg) {
  cfg.validate();
  require(adapter.capabilities().trainable_head, StatusCode::kCapability,
          "adapter '" + adapter.id() + "' does not support head training");
  require(!trainset.questions.empty(), StatusCode::kTraining,
          "empty training set");

  const int32_t dim = adapter.embedding_dim();
  McqaHead head;
  head.adapter_id = adapter.id();
  head.task_name = trainset.name;
  head.dim = dim;
  head.config_fingerprint = cfg.fingerprint();
  head.weights.assign(static_cast<size_t>(dim), 0.0);

  Rng init_rng(Rng::derive(cfg.seed, 0));
  for (auto& w : head.weights) w = 0.01 * (init_rng.uniform() - 0.5);
  head.bias = 0.0;

  // features are static; compute once
  struct Example {
    std::vector<std::vector<std::pair<int32_t, double>>> features;
    int gold = 0;
  };
  std::vector<Example> examples;
  examples.reserve(trainset.questions.size());
  for (const auto& q : trainset.questions) {
    const McqaInstance inst = render_mcqa(q);
    Example ex;
    ex.gold = inst.gold_index;
    for (const auto& text : inst.rendered_inputs)
      ex.features.push_back(
          truncated_embedding(adapter, text, cfg.max_seq_len));
    examples.push_back(std::move(ex));
  }

  std::vector<double> grad_accum(static_cast<size_t>(dim), 0.0);
  double bias_accum = 0.0;
  std::vector<double> grad(static_cast<size_t>(dim), 0.0);
  std::vector<int32_t> touched;
  double bias_grad = 0.0;

  double best_loss = std::numeric_limits<double>::infinity();
  int stale_epochs = 0;

  std::vector<size_t> order(examples.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    Rng epoch_rng(Rng::derive(cfg.seed, 1 + static_cast<uint64_t>(epoch)));
    epoch_rng.shuffle(order);
    double epoch_loss = 0.0;

    size_t b = 0;
    while (b < order.size()) {
      const size_t batch_end =
          std::min(order.size(), b + static_cast<size_t>(cfg.batch_size));
      touched.clear();
      bias_grad = 0.0;
      for (size_t oi = b; oi < batch_end; ++oi) {
        const Example& ex = examples[order[oi]];
        const size_t n_choices = ex.features.size();
        std::vector<double> logits(n_choices);
        double max_logit = -std::numeric_limits<double>::infinity();
        for (size_t c = 0; c < n_choices; ++c) {
          logits[c] = head.logit(ex.features[c]);
          max_logit = std::max(max_logit, logits[c]);
        }
        double z = 0.0;
        for (size_t c = 0; c < n_choices; ++c)
          z += std::exp(logits[c] - max_logit);
        const double log_z = max_logit + std::log(z);
        epoch_loss += log_z - logits[static_cast<size_t>(ex.gold)];
        for (size_t c = 0; c < n_choices; ++c) {
          const double p = std::exp(logits[c] - log_z);
          const double g =
              p - (static_cast<int>(c) == ex.gold ? 1.0 : 0.0);
          for (const auto& [i, v] : ex.features[c]) {
            if (grad[i] == 0.0) touched.push_back(i);
            grad[i] += g * v;
          }
          bias_grad += g;
        }
      }
      // adagrad step over the touched coordinates
      const double scale = 1.0 / static_cast<double>(batch_end - b);
      for (int32_t i : touched) {
        const double g = grad[i] * scale;
        grad_accum[i] += g * g;
        head.weights[i] -=
            cfg.learning_rate * g / (std::sqrt(grad_accum[i]) + 1e-8);
        grad[i] = 0.0;
      }
      const double gb = bias_grad * scale;
      bias_accum += gb * gb;
      head.bias -= cfg.learning_rate * gb / (std::sqrt(bias_accum) + 1e-8);
      b = batch_end;
    }

    epoch_loss /= static_cast<double>(examples.size());
    require(std::isfinite(epoch_loss), StatusCode::kTraining,
            "non-finite training loss at epoch " + std::to_string(epoch) +
                " (lr=" + std::to_string(cfg.learning_rate) +
                ", batch=" + std::to_string(cfg.batch_size) + ")");
    if (epoch_loss < best_loss - 1e-6) {
      best_loss = epoch_loss;
      stale_epochs = 0;
    } else if (++stale_epochs >= cfg.patience) {
      break;
    }
  }
  return head;
}

TaskReport evaluate_mcqa(const McqaHead& head, ScorerAdapter& adapter,
                         const ProbeTask& task) {
  require(!task.questions.empty(), StatusCode::kEval,
          "evaluation of an empty task: " + task.name);
  require(head.adapter_id == adapter.id(), StatusCode::kContract,
          "head was trained with adapter '" + head.adapter_id +
              "', got '" + adapter.id() + "'");
  require(head.task_name == task.name, StatusCode::kContract,
          "head was trained on task '" + head.task_name + "', got '" +
              task.name + "'");

  TaskReport report;
  report.task = task.name;
  report.adapter_id = adapter.id() + "+head-" + head.config_fingerprint;
  report.mode = "MC_QA";
  report.split = to_string(task.split);
  report.n = static_cast<int>(task.questions.size());
  report.predictions.reserve(task.questions.size());

  size_t n_correct = 0;
  for (const auto& q : task.questions) {
    const McqaInstance inst = render_mcqa(q);
    int best = 0;
    double best_logit = -std::numeric_limits<double>::infinity();
    for (size_t c = 0; c < inst.rendered_inputs.size(); ++c) {
      const double z = head.logit(
          adapter.pooled_embedding(inst.rendered_inputs[c]));
      if (z > best_logit) {
        best_logit = z;
        best = static_cast<int>(c);
      }
    }
    report.predictions.push_back(best);
    const bool ok = best == q.gold_index;
    report.correct.push_back(ok);
    n_correct += ok ? 1 : 0;
  }
  report.accuracy =
      100.0 * static_cast<double>(n_correct) / static_cast<double>(report.n);
  report.baseline = majority_baseline(task);
  return report;
}

std::unique_ptr<ScorerAdapter> train_masked(const ScorerAdapter& adapter,
                                            const ProbeTask& trainset,
                                            const TrainConfig& cfg) {
  const auto* tunable = dynamic_cast<const MaskedFineTunable*>(&adapter);
  require(tunable != nullptr, StatusCode::kCapability,
          "adapter '" + adapter.id() +
              "' does not support masked fine-tuning");
  return tunable->fine_tune_masked(trainset, cfg);
}

std::string head_checkpoint_name(const McqaHead& head) {
  return "head_" + head.adapter_id + "_" + head.task_name + "_" +
         head.config_fingerprint + ".json";
}

void save_head(const McqaHead& head, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), StatusCode::kIo, "cannot write head file: " + path);
  json doc;
  doc["adapter_id"] = head.adapter_id;
  doc["task_name"] = head.task_name;
  doc["dim"] = head.dim;
  doc["weights"] = head.weights;
  doc["bias"] = head.bias;
  doc["config_fingerprint"] = head.config_fingerprint;
  out << doc.dump() << "\n";
}

McqaHead load_head(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), StatusCode::kIo, "cannot open head file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    fail(StatusCode::kParse, path + ": " + e.what());
  }
  McqaHead head;
  head.adapter_id = doc.at("adapter_id").get<std::string>();
  head.task_name = doc.at("task_name").get<std::string>();
  head.dim = doc.at("dim").get<int32_t>();
  head.weights = doc.at("weights").get<std::vector<double>>();
  head.bias = doc.at("bias").get<double>();
  head.config_fingerprint = doc.at("config_fingerprint").get<std::string>();
  require(head.weights.size() == static_cast<size_t>(head.dim),
          StatusCode::kValidation, "head weight size mismatch in " + path);
  return head;
}

}  // namespace lmprobe
