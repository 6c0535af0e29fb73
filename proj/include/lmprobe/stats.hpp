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
#include <utility>
#include <vector>

namespace lmprobe {

// Subsample bootstrap of an accuracy vector.
//
// `halfwidth` is the standard deviation of the resample accuracies, i.e.
// the spread of a fraction-sized subsample. `fullsample_halfwidth`
// rescales it by sqrt(subsample/n) — the m-out-of-n estimate of the
// full-sample error, which is what reports attach to accuracy cells.
struct BootstrapCI {
  double mean = 0.0;                  // percentage
  double halfwidth = 0.0;             // sd of resample accuracies
  double fullsample_halfwidth = 0.0;  // halfwidth * sqrt(m/n)
  int n_resamples = 0;
  double subsample_fraction = 0.0;
  uint64_t seed = 0;
};

// Draws ceil(fraction*n) items without replacement per resample.
// Degenerate subsample size (0 items) is a contract error.
BootstrapCI bootstrap_ci(const std::vector<bool>& correct_vector,
                         double fraction, int n_resamples, uint64_t seed);

struct CorrelationResult {
  double rho = 0.0;
  double p_value = 1.0;
  int n = 0;
  int m_tests = 1;
  bool significant_after_bonferroni = false;  // p < alpha / m_tests
};

// Spearman rank correlation between model size and accuracy. Ties in
// accuracy get average ranks; sizes must be distinct. The p-value is the
// one-sided permutation tail in the observed direction, enumerated
// exactly for n <= 8 and t-approximated beyond. Bonferroni uses
// alpha = 0.05 over `m_tests` hypotheses.
CorrelationResult spearman_size_accuracy(
    const std::vector<std::pair<double, double>>& size_accuracy_points,
    int m_tests = 1);

struct HistogramBin {
  double lo = 0.0;  // bin covers [lo, lo + width)
  size_t count = 0;
};

// Half-open bins [m*w, (m+1)*w) covering the data range; counts conserve
// the input length.
std::vector<HistogramBin> delta_histogram(const std::vector<double>& deltas,
                                          double bin_width);

// Fraction of |delta| > threshold (strict).
double exceed_fraction(const std::vector<double>& deltas, double threshold);

// Average ranks (1-based, ties averaged).
std::vector<double> average_ranks(const std::vector<double>& values);

}  // namespace lmprobe
