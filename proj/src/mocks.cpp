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

#include "lmprobe/mocks.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "json.hpp"
#include "lmprobe/error.hpp"
#include "lmprobe/text.hpp"

namespace lmprobe {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double safe_log(double p) { return p > 0.0 ? std::log(p) : kNegInf; }

void check_sums_to_one(double sum, const std::string& what) {
  require(std::abs(sum - 1.0) <= 1e-6, StatusCode::kValidation,
          what + " must sum to 1, got " + std::to_string(sum));
}

}  // namespace

// --- UniformMock ------------------------------------------------------------

UniformMock::UniformMock(std::string id,
                         const std::vector<std::string>& tokens,
                         bool lowercase)
    : id_(std::move(id)), vocab_(tokens), tokenizer_(lowercase) {}

ScorerCapabilities UniformMock::capabilities() const {
  ScorerCapabilities caps;
  caps.masked_fill = caps.causal = caps.infill = caps.full_sequence = true;
  return caps;
}

Tokenization UniformMock::tokenize(std::string_view text) const {
  return tokenizer_.tokenize(text, vocab_);
}

TokenDistribution UniformMock::masked_fill(std::string_view) {
  TokenDistribution dist;
  dist.vocab_size = vocab_.size();
  dist.logprobs.assign(vocab_.size(), -std::log(vocab_.size()));
  return dist;
}

double UniformMock::sequence_logprob(std::span<const int32_t> tokens) {
  return -std::log(vocab_.size()) * static_cast<double>(tokens.size());
}

double UniformMock::infill_logprob(std::string_view,
                                   std::span<const int32_t> completion) {
  return -std::log(vocab_.size()) * static_cast<double>(completion.size());
}

TokenDistribution UniformMock::infill_first_token(std::string_view) {
  return masked_fill("");
}

std::vector<double> UniformMock::full_sequence_logprobs(
    std::string_view, std::string_view target) {
  const size_t n = tokenize(target).ids.size();
  return std::vector<double>(n, -std::log(vocab_.size()));
}

// --- TabularUnigramMock -----------------------------------------------------

TabularUnigramMock::TabularUnigramMock(
    std::string id, const std::map<std::string, double>& table,
    bool lowercase)
    : id_(std::move(id)), tokenizer_(lowercase) {
  double sum = 0.0;
  for (const auto& [token, p] : table) {
    require(p >= 0.0, StatusCode::kValidation,
            "negative probability for token: " + token);
    vocab_.add(token);
    sum += p;
  }
  check_sums_to_one(sum, "unigram table");
  logprobs_.assign(vocab_.size(), kNegInf);  // <unk> keeps zero mass
  for (const auto& [token, p] : table)
    logprobs_[vocab_.id_of(token)] = safe_log(p);
}

ScorerCapabilities TabularUnigramMock::capabilities() const {
  ScorerCapabilities caps;
  caps.masked_fill = caps.causal = caps.infill = caps.full_sequence = true;
  return caps;
}

Tokenization TabularUnigramMock::tokenize(std::string_view text) const {
  return tokenizer_.tokenize(text, vocab_);
}

TokenDistribution TabularUnigramMock::masked_fill(std::string_view) {
  TokenDistribution dist;
  dist.vocab_size = vocab_.size();
  dist.logprobs = logprobs_;
  return dist;
}

double TabularUnigramMock::sequence_logprob(std::span<const int32_t> tokens) {
  double total = 0.0;
  for (int32_t id : tokens) total += logprobs_[id];
  return total;
}

double TabularUnigramMock::infill_logprob(std::string_view,
                                          std::span<const int32_t> completion) {
  double total = 0.0;
  for (int32_t id : completion) total += logprobs_[id];
  return total;
}

TokenDistribution TabularUnigramMock::infill_first_token(std::string_view) {
  return masked_fill("");
}

std::vector<double> TabularUnigramMock::full_sequence_logprobs(
    std::string_view, std::string_view target) {
  std::vector<double> out;
  for (int32_t id : tokenize(target).ids) out.push_back(logprobs_[id]);
  return out;
}

// --- BigramMock ---------------------------------------------------------

BigramMock::BigramMock(
    std::string id, const std::map<std::string, double>& initial,
    const std::map<std::string, std::map<std::string, double>>& transitions)
    : id_(std::move(id)), tokenizer_(false) {
  for (const auto& [token, p] : initial) {
    (void)p;
    vocab_.add(token);
  }
  for (const auto& [prev, row] : transitions) {
    vocab_.add(prev);
    for (const auto& [token, p] : row) {
      (void)p;
      vocab_.add(token);
    }
  }
  const size_t v = static_cast<size_t>(vocab_.size());
  initial_.assign(v, 0.0);
  double sum = 0.0;
  for (const auto& [token, p] : initial) {
    initial_[vocab_.id_of(token)] = p;
    sum += p;
  }
  check_sums_to_one(sum, "initial distribution");
  rows_.assign(v, {});
  for (const auto& [prev, row] : transitions) {
    auto& r = rows_[vocab_.id_of(prev)];
    r.assign(v, 0.0);
    double row_sum = 0.0;
    for (const auto& [token, p] : row) {
      r[vocab_.id_of(token)] = p;
      row_sum += p;
    }
    check_sums_to_one(row_sum, "transition row '" + prev + "'");
  }
}

double BigramMock::conditional(int32_t prev, int32_t token) const {
  if (prev < 0) return initial_[token];
  const auto& row = rows_[prev];
  if (row.empty()) return 0.0;  // unseen context
  return row[token];
}

ScorerCapabilities BigramMock::capabilities() const {
  ScorerCapabilities caps;
  caps.masked_fill = caps.causal = caps.infill = caps.full_sequence = true;
  return caps;
}

Tokenization BigramMock::tokenize(std::string_view text) const {
  return tokenizer_.tokenize(text, vocab_);
}

std::vector<int32_t> BigramMock::context_ids(std::string_view text,
                                             int32_t* blank_pos) const {
  const Tokenization tok = tokenize(text);
  *blank_pos = -1;
  for (size_t i = 0; i < tok.tokens.size(); ++i) {
    if (tok.tokens[i] == kBlankMarker) {
      *blank_pos = static_cast<int32_t>(i);
      break;
    }
  }
  require(*blank_pos >= 0, StatusCode::kContract,
          "no blank marker in: " + std::string(text));
  return tok.ids;
}

TokenDistribution BigramMock::masked_fill(std::string_view text) {
  int32_t pos = -1;
  const std::vector<int32_t> ids = context_ids(text, &pos);
  const int32_t prev = pos > 0 ? ids[pos - 1] : -1;
  const int32_t next =
      pos + 1 < static_cast<int32_t>(ids.size()) ? ids[pos + 1] : -2;

  TokenDistribution dist;
  dist.vocab_size = vocab_.size();
  dist.logprobs.assign(vocab_.size(), kNegInf);
  double total = 0.0;
  std::vector<double> weight(vocab_.size(), 0.0);
  for (int32_t v = 0; v < vocab_.size(); ++v) {
    double w = conditional(prev, v);
    if (next >= 0) w *= conditional(v, next);
    weight[v] = w;
    total += w;
  }
  require(total > 0.0, StatusCode::kContract,
          "bigram mock has zero mass at the blank of: " + std::string(text));
  for (int32_t v = 0; v < vocab_.size(); ++v)
    dist.logprobs[v] = safe_log(weight[v] / total);
  return dist;
}

double BigramMock::sequence_logprob(std::span<const int32_t> tokens) {
  double total = 0.0;
  int32_t prev = -1;
  for (int32_t id : tokens) {
    total += safe_log(conditional(prev, id));
    prev = id;
  }
  return total;
}

double BigramMock::infill_logprob(std::string_view text,
                                  std::span<const int32_t> completion) {
  int32_t pos = -1;
  const std::vector<int32_t> ids = context_ids(text, &pos);
  int32_t prev = pos > 0 ? ids[pos - 1] : -1;
  double total = 0.0;
  for (int32_t id : completion) {
    total += safe_log(conditional(prev, id));
    prev = id;
  }
  return total;
}

TokenDistribution BigramMock::infill_first_token(std::string_view text) {
  int32_t pos = -1;
  const std::vector<int32_t> ids = context_ids(text, &pos);
  const int32_t prev = pos > 0 ? ids[pos - 1] : -1;
  TokenDistribution dist;
  dist.vocab_size = vocab_.size();
  dist.logprobs.resize(vocab_.size());
  for (int32_t v = 0; v < vocab_.size(); ++v)
    dist.logprobs[v] = safe_log(conditional(prev, v));
  return dist;
}

std::vector<double> BigramMock::full_sequence_logprobs(
    std::string_view, std::string_view target) {
  std::vector<double> out;
  int32_t prev = -1;
  for (int32_t id : tokenize(target).ids) {
    out.push_back(safe_log(conditional(prev, id)));
    prev = id;
  }
  return out;
}

// --- ScriptedMock -------------------------------------------------------

ScriptedMock::ScriptedMock(std::string id, bool lowercase)
    : id_(std::move(id)), tokenizer_(lowercase) {}

std::unique_ptr<ScriptedMock> ScriptedMock::from_json_file(
    std::string id, const std::string& path) {
  std::ifstream in(path);
  require(in.good(), StatusCode::kIo, "cannot open script file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return from_json_text(std::move(id), text);
}

std::unique_ptr<ScriptedMock> ScriptedMock::from_json_text(
    std::string id, const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(StatusCode::kParse, std::string("bad script JSON: ") + e.what());
  }
  auto mock = std::make_unique<ScriptedMock>(std::move(id),
                                             doc.value("lowercase", false));
  if (doc.contains("vocab"))
    mock->add_vocab(doc["vocab"].get<std::vector<std::string>>());
  if (doc.contains("masked"))
    for (const auto& [text_key, probs] : doc["masked"].items())
      mock->script_masked(text_key,
                          probs.get<std::map<std::string, double>>());
  if (doc.contains("sequence"))
    for (const auto& [key, lp] : doc["sequence"].items())
      mock->script_sequence(key, lp.get<double>());
  if (doc.contains("infill")) {
    for (const auto& [key, probs] : doc["infill"].items()) {
      const size_t sep = key.find('\x1f');
      require(sep != std::string::npos, StatusCode::kParse,
              "infill script keys are <text>\\u001f<completion>");
      mock->script_infill(key.substr(0, sep), key.substr(sep + 1),
                          probs.get<std::vector<double>>());
    }
  }
  if (doc.contains("fullseq")) {
    for (const auto& [key, lps] : doc["fullseq"].items()) {
      const size_t sep = key.find('\x1f');
      require(sep != std::string::npos, StatusCode::kParse,
              "fullseq script keys are <corrupted>\\u001f<target>");
      mock->script_fullseq(key.substr(0, sep), key.substr(sep + 1),
                           lps.get<std::vector<double>>());
    }
  }
  return mock;
}

void ScriptedMock::add_vocab(const std::vector<std::string>& tokens) {
  for (const auto& t : tokens) vocab_.add(t);
}

void ScriptedMock::script_masked(const std::string& text,
                                 const std::map<std::string, double>& probs) {
  double sum = 0.0;
  for (const auto& [token, p] : probs) {
    vocab_.add(token);
    sum += p;
  }
  require(sum <= 1.0 + 1e-6, StatusCode::kValidation,
          "scripted masked distribution exceeds 1 for: " + text);
  masked_[text] = probs;
}

void ScriptedMock::script_sequence(const std::string& detokenized,
                                   double logprob) {
  require(logprob <= 0.0, StatusCode::kValidation,
          "sequence log-probability must be <= 0");
  sequence_[detokenized] = logprob;
}

void ScriptedMock::script_infill(const std::string& text,
                                 const std::string& completion,
                                 const std::vector<double>& token_probs) {
  infill_[text + '\x1f' + completion] = token_probs;
  for (const auto& tok : tokenizer_.split(completion).tokens) vocab_.add(tok);
}

void ScriptedMock::script_fullseq(const std::string& corrupted,
                                  const std::string& target,
                                  const std::vector<double>& lps) {
  fullseq_[corrupted + '\x1f' + target] = lps;
}

ScorerCapabilities ScriptedMock::capabilities() const {
  ScorerCapabilities caps;
  caps.masked_fill = !masked_.empty();
  caps.causal = !sequence_.empty();
  caps.infill = !infill_.empty() || !masked_.empty();
  caps.full_sequence = !fullseq_.empty();
  return caps;
}

Tokenization ScriptedMock::tokenize(std::string_view text) const {
  return tokenizer_.tokenize(text, vocab_);
}

std::string ScriptedMock::detokenize(std::span<const int32_t> ids) const {
  std::string out;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i) out.push_back(' ');
    out += vocab_.token(ids[i]);
  }
  return out;
}

TokenDistribution ScriptedMock::masked_fill(std::string_view text) {
  auto it = masked_.find(std::string(text));
  require(it != masked_.end(), StatusCode::kContract,
          "scripted mock '" + id_ + "' has no masked entry for: " +
              std::string(text));
  TokenDistribution dist;
  dist.vocab_size = vocab_.size();
  dist.logprobs.assign(vocab_.size(), kNegInf);
  double listed = 0.0;
  for (const auto& [token, p] : it->second) {
    dist.logprobs[vocab_.id_of(token)] = safe_log(p);
    listed += p;
  }
  // leftover mass spread over unlisted tokens so the distribution sums to 1
  const int32_t unlisted =
      vocab_.size() - static_cast<int32_t>(it->second.size());
  if (listed < 1.0 - 1e-12 && unlisted > 0) {
    const double share = (1.0 - listed) / unlisted;
    for (int32_t v = 0; v < vocab_.size(); ++v) {
      if (!it->second.count(vocab_.token(v)))
        dist.logprobs[v] = safe_log(share);
    }
  }
  return dist;
}

double ScriptedMock::sequence_logprob(std::span<const int32_t> tokens) {
  const std::string key = detokenize(tokens);
  auto it = sequence_.find(key);
  require(it != sequence_.end(), StatusCode::kContract,
          "scripted mock '" + id_ + "' has no sequence entry for: " + key);
  return it->second;
}

double ScriptedMock::infill_logprob(std::string_view text,
                                    std::span<const int32_t> completion) {
  const std::string key =
      std::string(text) + '\x1f' + detokenize(completion);
  auto it = infill_.find(key);
  if (it != infill_.end()) {
    double total = 0.0;
    for (double p : it->second) total += safe_log(p);
    return total;
  }
  // fall back to the masked table for single-token completions, so one
  // script drives both protocols consistently
  if (completion.size() == 1 && !masked_.empty()) {
    const TokenDistribution dist = masked_fill(text);
    return dist.logprobs[completion[0]];
  }
  fail(StatusCode::kContract,
       "scripted mock '" + id_ + "' has no infill entry for: " + key);
}

TokenDistribution ScriptedMock::infill_first_token(std::string_view text) {
  return masked_fill(text);
}

std::vector<double> ScriptedMock::full_sequence_logprobs(
    std::string_view corrupted, std::string_view target) {
  const std::string key =
      std::string(corrupted) + '\x1f' + std::string(target);
  auto it = fullseq_.find(key);
  require(it != fullseq_.end(), StatusCode::kContract,
          "scripted mock '" + id_ + "' has no fullseq entry for: " + key);
  return it->second;
}

}  // namespace lmprobe
