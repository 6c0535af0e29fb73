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

#include "lmprobe/scorer.hpp"

#include <cctype>
#include <cmath>

#include "lmprobe/error.hpp"
#include "lmprobe/text.hpp"

namespace lmprobe {

Vocabulary::Vocabulary() { add(std::string(kUnkToken)); }

Vocabulary::Vocabulary(const std::vector<std::string>& tokens) {
  add(std::string(kUnkToken));
  for (const auto& t : tokens) add(t);
}

int32_t Vocabulary::add(const std::string& token) {
  auto it = map_.find(token);
  if (it != map_.end()) return it->second;
  const int32_t id = static_cast<int32_t>(tokens_.size());
  tokens_.push_back(token);
  map_.emplace(token, id);
  return id;
}

int32_t Vocabulary::id_of(std::string_view token) const {
  auto it = map_.find(std::string(token));
  return it == map_.end() ? kUnkId : it->second;
}

const std::string& Vocabulary::token(int32_t id) const {
  require(id >= 0 && id < size(), StatusCode::kContract,
          "token id out of range: " + std::to_string(id));
  return tokens_[static_cast<size_t>(id)];
}

namespace {

bool is_word_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '\'' || c == '-' || c == '_' || c == '<' ||
         c == '>';
}

}  // namespace

Tokenization WordPunctTokenizer::split(std::string_view text) const {
  Tokenization out;
  size_t i = 0;
  while (i < text.size()) {
    const auto u = static_cast<unsigned char>(text[i]);
    if (std::isspace(u)) {
      ++i;
      continue;
    }
    if (text.substr(i, kBlankMarker.size()) == kBlankMarker) {
      out.tokens.emplace_back(kBlankMarker);
      out.offsets.push_back({i, i + kBlankMarker.size()});
      i += kBlankMarker.size();
      continue;
    }
    if (is_word_char(text[i])) {
      const size_t start = i;
      while (i < text.size() && is_word_char(text[i])) ++i;
      std::string tok(text.substr(start, i - start));
      if (lowercase_) tok = lowercase_ascii(tok);
      out.tokens.push_back(std::move(tok));
      out.offsets.push_back({start, i});
    } else {
      // every punctuation character stands alone
      out.tokens.emplace_back(1, text[i]);
      out.offsets.push_back({i, i + 1});
      ++i;
    }
  }
  return out;
}

Tokenization WordPunctTokenizer::tokenize(std::string_view text,
                                          const Vocabulary& vocab) const {
  Tokenization out = split(text);
  out.ids.reserve(out.tokens.size());
  for (const auto& t : out.tokens) out.ids.push_back(vocab.id_of(t));
  return out;
}

// ---------------------------------------------------------------------------
// default adapter entry points

namespace {
[[noreturn]] void missing_capability(const AdapterBase& a,
                                     const char* what) {
  fail(StatusCode::kCapability,
       "adapter '" + a.id() + "' does not support " + what);
}
}  // namespace

TokenDistribution ScorerAdapter::masked_fill(std::string_view) {
  missing_capability(*this, "masked_fill");
}
double ScorerAdapter::sequence_logprob(std::span<const int32_t>) {
  missing_capability(*this, "causal sequence scoring");
}
double ScorerAdapter::infill_logprob(std::string_view,
                                     std::span<const int32_t>) {
  missing_capability(*this, "infill scoring");
}
TokenDistribution ScorerAdapter::infill_first_token(std::string_view) {
  missing_capability(*this, "infill scoring");
}
std::vector<double> ScorerAdapter::full_sequence_logprobs(std::string_view,
                                                          std::string_view) {
  missing_capability(*this, "full-sequence scoring");
}
std::vector<std::pair<int32_t, double>> ScorerAdapter::pooled_embedding(
    std::string_view) {
  missing_capability(*this, "pooled embeddings");
}
int32_t ScorerAdapter::embedding_dim() const {
  missing_capability(*this, "pooled embeddings");
}

// ---------------------------------------------------------------------------
// checked entry points

void validate_distribution(const TokenDistribution& dist, double tol) {
  require(dist.vocab_size == static_cast<int32_t>(dist.logprobs.size()),
          StatusCode::kContract, "distribution size mismatch");
  double sum = 0.0;
  for (double lp : dist.logprobs) {
    require(!(lp > 1e-9), StatusCode::kContract,
            "log-probability above zero: " + std::to_string(lp));
    sum += std::exp(lp);
  }
  require(std::abs(sum - 1.0) <= tol, StatusCode::kContract,
          "distribution does not normalize: sum(exp(logprob)) = " +
              std::to_string(sum));
}

TokenDistribution masked_fill_logprobs(ScorerAdapter& adapter,
                                       std::string_view text_with_blank) {
  require(adapter.capabilities().masked_fill, StatusCode::kCapability,
          "adapter '" + adapter.id() + "' lacks masked_fill");
  const size_t markers = count_blank_markers(text_with_blank);
  require(markers == 1, StatusCode::kContract,
          "masked_fill needs exactly one blank marker, found " +
              std::to_string(markers) + " in: " +
              std::string(text_with_blank));
  TokenDistribution dist = adapter.masked_fill(text_with_blank);
  validate_distribution(dist);
  return dist;
}

double sequence_logprob(ScorerAdapter& adapter,
                        std::span<const int32_t> tokens) {
  require(adapter.capabilities().causal, StatusCode::kCapability,
          "adapter '" + adapter.id() + "' lacks causal scoring");
  require(!tokens.empty(), StatusCode::kContract,
          "sequence_logprob: empty token sequence");
  const double lp = adapter.sequence_logprob(tokens);
  require(!(lp > 1e-9), StatusCode::kContract,
          "sequence log-probability above zero");
  return lp;
}

double infill_logprob(ScorerAdapter& adapter,
                      std::string_view text_with_blank,
                      std::span<const int32_t> completion) {
  require(adapter.capabilities().infill, StatusCode::kCapability,
          "adapter '" + adapter.id() + "' lacks infill scoring");
  const size_t markers = count_blank_markers(text_with_blank);
  require(markers == 1, StatusCode::kContract,
          "infill needs exactly one blank marker, found " +
              std::to_string(markers));
  if (completion.empty()) return 0.0;  // log of the empty product
  const double lp = adapter.infill_logprob(text_with_blank, completion);
  require(!(lp > 1e-9), StatusCode::kContract,
          "infill log-probability above zero");
  return lp;
}

TokenDistribution infill_first_token_logprobs(
    ScorerAdapter& adapter, std::string_view text_with_blank) {
  require(adapter.capabilities().infill, StatusCode::kCapability,
          "adapter '" + adapter.id() + "' lacks infill scoring");
  require(count_blank_markers(text_with_blank) == 1, StatusCode::kContract,
          "infill needs exactly one blank marker");
  TokenDistribution dist = adapter.infill_first_token(text_with_blank);
  validate_distribution(dist);
  return dist;
}

std::vector<double> full_sequence_logprobs(ScorerAdapter& adapter,
                                           std::string_view corrupted,
                                           std::string_view target) {
  require(adapter.capabilities().full_sequence, StatusCode::kCapability,
          "adapter '" + adapter.id() + "' lacks full-sequence scoring");
  require(count_blank_markers(corrupted) == 1, StatusCode::kContract,
          "full_sequence needs exactly one blank marker in the corrupted "
          "text");
  // Alignment: target == prefix + candidate + suffix.
  const size_t pos = corrupted.find(kBlankMarker);
  const std::string_view prefix = corrupted.substr(0, pos);
  const std::string_view suffix =
      corrupted.substr(pos + kBlankMarker.size());
  const bool prefix_ok = target.substr(0, prefix.size()) == prefix;
  const bool suffix_ok =
      target.size() >= prefix.size() + suffix.size() &&
      target.substr(target.size() - suffix.size()) == suffix;
  require(prefix_ok && suffix_ok, StatusCode::kAlignment,
          "target does not match the corrupted text outside the blank "
          "span: " + std::string(target));
  std::vector<double> lps = adapter.full_sequence_logprobs(corrupted, target);
  const size_t n_target_tokens = adapter.tokenize(target).ids.size();
  require(lps.size() == n_target_tokens, StatusCode::kContract,
          "full_sequence returned " + std::to_string(lps.size()) +
              " log-probs for " + std::to_string(n_target_tokens) +
              " target tokens");
  return lps;
}

}  // namespace lmprobe
