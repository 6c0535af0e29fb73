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

// Brute-force reference scorer for the protocol-equivalence checks. It
// works directly on whitespace-joined word lists and raw probability
// tables: no adapter interface, no tokenizer, no span extraction. Every
// mode's score is an explicit chain-rule enumeration over the table.

#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "lmprobe/rng.hpp"
#include "lmprobe/types.hpp"

namespace lmprobe::testing {

struct OracleTables {
  bool bigram = false;
  std::map<std::string, double> uni;
  std::map<std::string, double> initial;
  std::map<std::string, std::map<std::string, double>> trans;

  double cond(const std::string* prev, const std::string& word) const {
    if (!bigram) return uni.count(word) ? uni.at(word) : 0.0;
    if (prev == nullptr)
      return initial.count(word) ? initial.at(word) : 0.0;
    auto row = trans.find(*prev);
    if (row == trans.end()) return 0.0;
    return row->second.count(word) ? row->second.at(word) : 0.0;
  }
};

inline std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> words;
  std::string current;
  for (char c : text) {
    if (c == ' ') {
      if (!current.empty()) words.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) words.push_back(current);
  return words;
}

inline double oracle_joint_logprob(const OracleTables& t,
                                   const std::vector<std::string>& words) {
  double total = 0.0;
  const std::string* prev = nullptr;
  for (const auto& w : words) {
    const double p = t.cond(prev, w);
    total += p > 0.0 ? std::log(p)
                     : -std::numeric_limits<double>::infinity();
    prev = &w;
  }
  return total;
}

// Words of the stem with the choice substituted at the blank position.
inline std::vector<std::string> substitute_words(
    const std::vector<std::string>& stem_words, size_t blank,
    const std::string& choice) {
  std::vector<std::string> out;
  for (size_t i = 0; i < stem_words.size(); ++i) {
    if (i == blank) {
      for (const auto& w : split_words(choice)) out.push_back(w);
    } else {
      out.push_back(stem_words[i]);
    }
  }
  return out;
}

enum class OracleMode { kMasked, kCausal, kInfill, kFullSeq };

// Chain-rule enumeration of one candidate's score under the given mode.
inline double oracle_choice_score(const OracleTables& t,
                                  const std::vector<std::string>& stem_words,
                                  size_t blank, const std::string& choice,
                                  OracleMode mode) {
  const std::vector<std::string> completion = split_words(choice);
  const std::vector<std::string> full =
      substitute_words(stem_words, blank, choice);
  auto log_or_inf = [](double p) {
    return p > 0.0 ? std::log(p)
                   : -std::numeric_limits<double>::infinity();
  };
  switch (mode) {
    case OracleMode::kMasked: {
      // local factors around the blank (single-token choices only)
      const std::string* prev = blank > 0 ? &stem_words[blank - 1] : nullptr;
      double w = t.cond(prev, completion.at(0));
      if (blank + 1 < stem_words.size())
        w *= t.cond(&completion.at(0), stem_words[blank + 1]);
      return log_or_inf(w);
    }
    case OracleMode::kCausal:
      return oracle_joint_logprob(t, full);
    case OracleMode::kInfill: {
      double total = 0.0;
      const std::string* prev = blank > 0 ? &stem_words[blank - 1] : nullptr;
      for (const auto& w : completion) {
        total += log_or_inf(t.cond(prev, w));
        prev = &w;
      }
      return total;
    }
    case OracleMode::kFullSeq: {
      // positions covered by the candidate's characters: with one-space
      // joining these are exactly [blank, blank + len(completion))
      double total = 0.0;
      const std::string* prev = nullptr;
      for (size_t i = 0; i < full.size(); ++i) {
        const double lp = log_or_inf(t.cond(prev, full[i]));
        if (i >= blank && i < blank + completion.size()) total += lp;
        prev = &full[i];
      }
      return total;
    }
  }
  return 0.0;
}

inline int oracle_argmax(const OracleTables& t,
                         const std::vector<std::string>& stem_words,
                         size_t blank,
                         const std::vector<std::string>& choices,
                         OracleMode mode) {
  int best = 0;
  double best_score = oracle_choice_score(t, stem_words, blank, choices[0],
                                          mode);
  for (size_t i = 1; i < choices.size(); ++i) {
    const double s = oracle_choice_score(t, stem_words, blank, choices[i],
                                         mode);
    if (s > best_score) {
      best_score = s;
      best = static_cast<int>(i);
    }
  }
  return best;
}

// --- random corpus generation ------------------------------------------

struct GeneratedCase {
  OracleTables tables;
  std::vector<std::string> stem_words;  // with "[MASK]" at blank
  size_t blank = 0;
  std::vector<std::string> choices;
  std::string stem;  // space-joined
};

inline const std::vector<std::string>& oracle_lexicon() {
  static const std::vector<std::string> words = {"alder", "birch", "cedar",
                                                 "dogwood", "elm", "fir"};
  return words;
}

inline OracleTables random_tables(Rng& rng, size_t vocab_size, bool bigram) {
  OracleTables t;
  t.bigram = bigram;
  std::vector<std::string> vocab(oracle_lexicon().begin(),
                                 oracle_lexicon().begin() + vocab_size);
  auto random_dist = [&rng, &vocab]() {
    std::map<std::string, double> dist;
    double total = 0.0;
    for (const auto& w : vocab) {
      const double x = 0.05 + rng.uniform();  // keep all probs positive
      dist[w] = x;
      total += x;
    }
    for (auto& [w, p] : dist) p /= total;
    return dist;
  };
  if (bigram) {
    t.initial = random_dist();
    for (const auto& w : vocab) t.trans[w] = random_dist();
  } else {
    t.uni = random_dist();
  }
  return t;
}

inline GeneratedCase random_case(Rng& rng, bool bigram,
                                 bool multi_token_choices) {
  GeneratedCase c;
  const size_t vocab_size = 3 + rng.bounded(4);  // 3..6
  c.tables = random_tables(rng, vocab_size, bigram);
  std::vector<std::string> vocab(oracle_lexicon().begin(),
                                 oracle_lexicon().begin() + vocab_size);

  const size_t len = 2 + rng.bounded(7);  // 2..8 tokens
  c.blank = rng.bounded(len);
  for (size_t i = 0; i < len; ++i) {
    if (i == c.blank) {
      c.stem_words.push_back("[MASK]");
    } else {
      c.stem_words.push_back(vocab[rng.bounded(vocab.size())]);
    }
  }

  const size_t n_choices = 2 + rng.bounded(2);  // 2..3
  while (c.choices.size() < n_choices) {
    std::string choice = vocab[rng.bounded(vocab.size())];
    if (multi_token_choices && rng.bounded(2) == 0)
      choice += " " + vocab[rng.bounded(vocab.size())];
    bool duplicate = false;
    for (const auto& existing : c.choices)
      if (existing == choice) duplicate = true;
    if (!duplicate) c.choices.push_back(choice);
  }

  for (size_t i = 0; i < c.stem_words.size(); ++i) {
    if (i) c.stem += " ";
    c.stem += c.stem_words[i];
  }
  return c;
}

}  // namespace lmprobe::testing
