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

#include "lmprobe/ngram.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "lmprobe/error.hpp"
#include "lmprobe/text.hpp"
#include "lmprobe/types.hpp"

namespace lmprobe {

namespace {
// hashed feature blocks for the pooled embedding
constexpr int32_t kUnigramBuckets = 2048;
constexpr int32_t kPairBuckets = 16384;
}  // namespace

std::shared_ptr<const NgramLm> NgramLm::train_from_file(
    const std::string& corpus_path, const Options& opts) {
  std::ifstream in(corpus_path);
  require(in.good(), StatusCode::kIo,
          "cannot open corpus file: " + corpus_path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  require(!lines.empty(), StatusCode::kValidation,
          "corpus file is empty: " + corpus_path);
  return train_from_lines(lines, opts);
}

std::shared_ptr<const NgramLm> NgramLm::train_from_lines(
    const std::vector<std::string>& lines, const Options& opts) {
  auto lm = std::shared_ptr<NgramLm>(new NgramLm());
  lm->opts_ = opts;
  lm->tokenizer_ = WordPunctTokenizer(opts.lowercase);
  // two passes: fix the vocabulary first so count arrays are stable
  for (const auto& l : lines)
    for (const auto& tok : lm->tokenizer_.split(l).tokens)
      if (tok != kBlankMarker) lm->vocab_.add(tok);
  lm->uni_counts_.assign(lm->vocab_.size(), 0.0);
  lm->bi_counts_.assign(lm->vocab_.size(), {});
  lm->ctx_totals_.assign(lm->vocab_.size(), 0.0);
  for (const auto& l : lines) lm->add_sentence(l, 1.0);
  return lm;
}

void NgramLm::add_sentence(const std::string& line, double weight) {
  const Tokenization tok = tokenizer_.tokenize(line, vocab_);
  int32_t prev = -1;
  for (int32_t id : tok.ids) {
    count(prev, id, weight);
    prev = id;
  }
}

void NgramLm::count(int32_t prev, int32_t token, double weight) {
  uni_counts_[token] += weight;
  total_ += weight;
  if (prev < 0) {
    start_counts_[token] += weight;
    start_total_ += weight;
  } else {
    bi_counts_[prev][token] += weight;
    ctx_totals_[prev] += weight;
  }
}

double NgramLm::unigram(int32_t token) const {
  const double v = static_cast<double>(vocab_.size());
  return (uni_counts_[token] + opts_.alpha) / (total_ + opts_.alpha * v);
}

double NgramLm::conditional(int32_t prev, int32_t token) const {
  const double v = static_cast<double>(vocab_.size());
  double bigram;
  if (prev < 0) {
    auto it = start_counts_.find(token);
    const double c = it == start_counts_.end() ? 0.0 : it->second;
    bigram = (c + opts_.alpha) / (start_total_ + opts_.alpha * v);
  } else {
    const auto& row = bi_counts_[prev];
    auto it = row.find(token);
    const double c = it == row.end() ? 0.0 : it->second;
    bigram = (c + opts_.alpha) / (ctx_totals_[prev] + opts_.alpha * v);
  }
  return opts_.lambda * bigram + (1.0 - opts_.lambda) * unigram(token);
}

std::shared_ptr<const NgramLm> NgramLm::adapted(
    const std::vector<std::string>& sentences, double weight) const {
  auto lm = std::shared_ptr<NgramLm>(new NgramLm(*this));
  // adaptation may introduce new words: extend the vocabulary first
  for (const auto& s : sentences)
    for (const auto& tok : lm->tokenizer_.split(s).tokens)
      if (tok != kBlankMarker) lm->vocab_.add(tok);
  lm->uni_counts_.resize(lm->vocab_.size(), 0.0);
  lm->bi_counts_.resize(lm->vocab_.size());
  lm->ctx_totals_.resize(lm->vocab_.size(), 0.0);
  for (const auto& s : sentences) lm->add_sentence(s, weight);
  return lm;
}

// ---------------------------------------------------------------------------

NgramAdapter::NgramAdapter(std::string id, std::shared_ptr<const NgramLm> lm,
                           ScorerCapabilities caps)
    : id_(std::move(id)), lm_(std::move(lm)), caps_(caps) {
  require(caps_.any_scoring(), StatusCode::kValidation,
          "adapter '" + id_ + "' declares no scoring capability");
}

Tokenization NgramAdapter::tokenize(std::string_view text) const {
  return lm_->tokenizer().tokenize(text, lm_->vocab());
}

int32_t NgramAdapter::blank_position(const Tokenization& tok,
                                     std::string_view text) const {
  for (size_t i = 0; i < tok.tokens.size(); ++i)
    if (tok.tokens[i] == kBlankMarker) return static_cast<int32_t>(i);
  fail(StatusCode::kContract, "no blank marker in: " + std::string(text));
}

TokenDistribution NgramAdapter::masked_fill(std::string_view text) {
  const Tokenization tok = tokenize(text);
  const int32_t pos = blank_position(tok, text);
  const int32_t prev = pos > 0 ? tok.ids[pos - 1] : -1;
  const int32_t next = static_cast<size_t>(pos + 1) < tok.ids.size()
                           ? tok.ids[pos + 1]
                           : -2;
  const int32_t v = lm_->vocab().size();
  std::vector<double> weight(v);
  double total = 0.0;
  for (int32_t t = 0; t < v; ++t) {
    double w = lm_->conditional(prev, t);
    if (next >= 0) w *= lm_->conditional(t, next);
    weight[t] = w;
    total += w;
  }
  TokenDistribution dist;
  dist.vocab_size = v;
  dist.logprobs.resize(v);
  for (int32_t t = 0; t < v; ++t)
    dist.logprobs[t] = std::log(weight[t] / total);
  return dist;
}

double NgramAdapter::sequence_logprob(std::span<const int32_t> tokens) {
  double total = 0.0;
  int32_t prev = -1;
  for (int32_t id : tokens) {
    total += std::log(lm_->conditional(prev, id));
    prev = id;
  }
  return total;
}

double NgramAdapter::infill_logprob(std::string_view text,
                                    std::span<const int32_t> completion) {
  const Tokenization tok = tokenize(text);
  const int32_t pos = blank_position(tok, text);
  int32_t prev = pos > 0 ? tok.ids[pos - 1] : -1;
  double total = 0.0;
  for (int32_t id : completion) {
    total += std::log(lm_->conditional(prev, id));
    prev = id;
  }
  return total;
}

TokenDistribution NgramAdapter::infill_first_token(std::string_view text) {
  const Tokenization tok = tokenize(text);
  const int32_t pos = blank_position(tok, text);
  const int32_t prev = pos > 0 ? tok.ids[pos - 1] : -1;
  const int32_t v = lm_->vocab().size();
  TokenDistribution dist;
  dist.vocab_size = v;
  dist.logprobs.resize(v);
  for (int32_t t = 0; t < v; ++t)
    dist.logprobs[t] = std::log(lm_->conditional(prev, t));
  return dist;
}

std::vector<double> NgramAdapter::full_sequence_logprobs(
    std::string_view, std::string_view target) {
  // teacher-forced scoring of the completed target
  std::vector<double> out;
  int32_t prev = -1;
  for (int32_t id : tokenize(target).ids) {
    out.push_back(std::log(lm_->conditional(prev, id)));
    prev = id;
  }
  return out;
}

std::vector<std::pair<int32_t, double>> NgramAdapter::pooled_embedding(
    std::string_view text) {
  const Tokenization tok = lm_->tokenizer().split(text);
  std::unordered_map<int32_t, double> acc;
  const auto& words = tok.tokens;
  if (!words.empty()) {
    const double wu = 1.0 / static_cast<double>(words.size());
    for (const auto& w : words) {
      const auto h = static_cast<int32_t>(fnv1a64(w) % kUnigramBuckets);
      acc[h] += wu;
    }
    const size_t n_pairs = words.size() * (words.size() - 1) / 2;
    if (n_pairs > 0) {
      const double wp = 1.0 / static_cast<double>(n_pairs);
      for (size_t i = 0; i < words.size(); ++i) {
        for (size_t j = i + 1; j < words.size(); ++j) {
          // the capped distance keeps token positions distinguishable
          // (an ordered bag alone cannot represent "which of the
          // mentioned values sits in which slot")
          const size_t dist = std::min<size_t>(j - i, 15);
          const std::string key = words[i] + '\x1f' + words[j] +
                                  '\x1f' + static_cast<char>('a' + dist);
          const auto h = static_cast<int32_t>(
              kUnigramBuckets + fnv1a64(key) % kPairBuckets);
          acc[h] += wp;
        }
      }
    }
  }
  std::vector<std::pair<int32_t, double>> out(acc.begin(), acc.end());
  std::sort(out.begin(), out.end());
  return out;
}

int32_t NgramAdapter::embedding_dim() const {
  return kUnigramBuckets + kPairBuckets;
}

std::unique_ptr<ScorerAdapter> NgramAdapter::fine_tune_masked(
    const ProbeTask& trainset, const TrainConfig& cfg) const {
  cfg.validate();
  std::vector<std::string> sentences;
  sentences.reserve(trainset.questions.size());
  for (const auto& q : trainset.questions) {
    require(count_blank_markers(q.stem) == 1, StatusCode::kTraining,
            "masked fine-tuning needs a blank marker in every stem");
    sentences.push_back(
        substitute_blank(q.stem, q.choices[q.gold_index]).text);
  }
  // one adaptation pass per epoch, each at the learning-rate weight
  auto lm = lm_;
  for (int e = 0; e < cfg.epochs; ++e)
    lm = lm->adapted(sentences, cfg.learning_rate);
  return std::make_unique<NgramAdapter>(
      id_ + "+mlm-ft-" + cfg.fingerprint(), lm, caps_);
}

}  // namespace lmprobe
