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

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lmprobe/types.hpp"

namespace lmprobe {

// Token id 0 is always the unknown token.
inline constexpr int32_t kUnkId = 0;
inline constexpr std::string_view kUnkToken = "<unk>";

class Vocabulary {
 public:
  Vocabulary();  // contains only <unk>
  explicit Vocabulary(const std::vector<std::string>& tokens);

  int32_t add(const std::string& token);      // idempotent
  int32_t id_of(std::string_view token) const;  // kUnkId when absent
  const std::string& token(int32_t id) const;
  int32_t size() const { return static_cast<int32_t>(tokens_.size()); }
  bool contains(std::string_view token) const {
    return map_.find(std::string(token)) != map_.end();
  }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int32_t> map_;
};

struct TokenSpan {
  size_t begin = 0;
  size_t end = 0;
};

struct Tokenization {
  std::vector<int32_t> ids;
  std::vector<std::string> tokens;  // surface forms (case-folded if enabled)
  std::vector<TokenSpan> offsets;   // character spans into the source
};

// Whitespace + punctuation word tokenizer. The blank marker "[MASK]" is
// kept atomic. Offsets cover exactly the non-whitespace characters.
class WordPunctTokenizer {
 public:
  explicit WordPunctTokenizer(bool lowercase = false)
      : lowercase_(lowercase) {}

  // Splits without a vocabulary (ids left empty).
  Tokenization split(std::string_view text) const;
  // Splits and maps through `vocab` (OOV -> kUnkId).
  Tokenization tokenize(std::string_view text, const Vocabulary& vocab) const;

  bool lowercase() const { return lowercase_; }

 private:
  bool lowercase_;
};

struct ScorerCapabilities {
  bool masked_fill = false;    // vocabulary distribution at a blank
  bool causal = false;         // total left-to-right sequence log-prob
  bool infill = false;         // log-probs of tokens generated in a sentinel
  bool full_sequence = false;  // per-position log-probs of the full target
  bool trainable_head = false;
  int max_batch = 1;

  bool any_scoring() const {
    return masked_fill || causal || infill || full_sequence;
  }
};

// Log-probabilities over an adapter's full vocabulary at one position.
// exp of the entries sums to 1 (checked to 1e-4 by the entry points).
struct TokenDistribution {
  std::vector<double> logprobs;  // indexed by token id
  int32_t vocab_size = 0;
};

class AdapterBase {
 public:
  virtual ~AdapterBase() = default;
  virtual const std::string& id() const = 0;
};

// Capability-typed scorer contract. Implementations override the entry
// points they declare in capabilities(); the defaults throw capability
// errors. Callers go through the free functions below, which validate
// inputs and capabilities before any model computation.
class ScorerAdapter : public AdapterBase {
 public:
  virtual ScorerCapabilities capabilities() const = 0;
  virtual const Vocabulary& vocab() const = 0;
  virtual Tokenization tokenize(std::string_view text) const = 0;

  virtual TokenDistribution masked_fill(std::string_view text_with_blank);
  virtual double sequence_logprob(std::span<const int32_t> tokens);
  virtual double infill_logprob(std::string_view text_with_blank,
                                std::span<const int32_t> completion);
  // Distribution of the first token generated in the sentinel slot; used
  // for full-vocabulary top-k and top-1 queries on infill adapters.
  virtual TokenDistribution infill_first_token(
      std::string_view text_with_blank);
  virtual std::vector<double> full_sequence_logprobs(
      std::string_view corrupted, std::string_view target);

  // Sparse pooled sentence representation for head training. Adapters
  // with trainable_head must override both.
  virtual std::vector<std::pair<int32_t, double>> pooled_embedding(
      std::string_view text);
  virtual int32_t embedding_dim() const;
};

// Capability- and contract-checked entry points (fail fast, then delegate).
TokenDistribution masked_fill_logprobs(ScorerAdapter& adapter,
                                       std::string_view text_with_blank);
double sequence_logprob(ScorerAdapter& adapter,
                        std::span<const int32_t> tokens);
double infill_logprob(ScorerAdapter& adapter,
                      std::string_view text_with_blank,
                      std::span<const int32_t> completion);
TokenDistribution infill_first_token_logprobs(
    ScorerAdapter& adapter, std::string_view text_with_blank);
// `target` must equal `corrupted` with the blank replaced by candidate
// text; any mismatch outside the blank span is an alignment error.
std::vector<double> full_sequence_logprobs(ScorerAdapter& adapter,
                                           std::string_view corrupted,
                                           std::string_view target);

// Checks |sum(exp(logprobs)) - 1| <= tol and logprobs <= 0.
void validate_distribution(const TokenDistribution& dist, double tol = 1e-4);

}  // namespace lmprobe
