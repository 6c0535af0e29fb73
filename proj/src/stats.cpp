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

#include "lmprobe/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "lmprobe/error.hpp"
#include "lmprobe/rng.hpp"

namespace lmprobe {

BootstrapCI bootstrap_ci(const std::vector<bool>& correct_vector,
                         double fraction, int n_resamples, uint64_t seed) {
  const size_t n = correct_vector.size();
  require(n > 0, StatusCode::kContract, "bootstrap_ci: empty vector");
  require(fraction > 0.0 && fraction <= 1.0, StatusCode::kContract,
          "bootstrap_ci: fraction must be in (0, 1]");
  require(n_resamples >= 1, StatusCode::kContract,
          "bootstrap_ci: n_resamples must be >= 1");
  const size_t k = static_cast<size_t>(
      std::ceil(fraction * static_cast<double>(n)));
  require(k >= 1, StatusCode::kContract,
          "bootstrap_ci: degenerate subsample of size 0");

  std::vector<double> accs(n_resamples);
  for (int r = 0; r < n_resamples; ++r) {
    // per-resample stream derived from the master seed, so the result
    // does not depend on evaluation order
    Rng rng(Rng::derive(seed, static_cast<uint64_t>(r)));
    const auto idx = rng.sample_without_replacement(n, k);
    size_t correct = 0;
    for (size_t i : idx) correct += correct_vector[i] ? 1 : 0;
    accs[r] = 100.0 * static_cast<double>(correct) / static_cast<double>(k);
  }

  BootstrapCI ci;
  ci.n_resamples = n_resamples;
  ci.subsample_fraction = fraction;
  ci.seed = seed;
  ci.mean = std::accumulate(accs.begin(), accs.end(), 0.0) /
            static_cast<double>(n_resamples);
  double ss = 0.0;
  for (double a : accs) ss += (a - ci.mean) * (a - ci.mean);
  ci.halfwidth = std::sqrt(ss / static_cast<double>(n_resamples));
  ci.fullsample_halfwidth =
      ci.halfwidth *
      std::sqrt(static_cast<double>(k) / static_cast<double>(n));
  return ci;
}

std::vector<double> average_ranks(const std::vector<double>& values) {
  const size_t n = values.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
    i = j + 1;
  }
  return ranks;
}

namespace {

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;  // tie-degenerate: rho = 0
  return sxy / std::sqrt(sxx * syy);
}

// regularized incomplete beta via Lentz's continued fraction
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-14;
  constexpr double kFpMin = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::abs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

double incbeta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_beta =
      std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  const double front =
      std::exp(a * std::log(x) + b * std::log(1.0 - x) - ln_beta);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

// one-sided P(T >= t) for Student t with df degrees of freedom
double student_t_sf(double t, double df) {
  const double p_two = incbeta(df / 2.0, 0.5, df / (df + t * t));
  return t >= 0.0 ? p_two / 2.0 : 1.0 - p_two / 2.0;
}

}  // namespace

CorrelationResult spearman_size_accuracy(
    const std::vector<std::pair<double, double>>& points, int m_tests) {
  const size_t n = points.size();
  require(n >= 2, StatusCode::kContract,
          "spearman correlation needs at least 2 points");
  require(m_tests >= 1, StatusCode::kContract, "m_tests must be >= 1");
  std::vector<double> sizes(n), accs(n);
  for (size_t i = 0; i < n; ++i) {
    sizes[i] = points[i].first;
    accs[i] = points[i].second;
  }
  {
    std::set<double> uniq(sizes.begin(), sizes.end());
    require(uniq.size() == n, StatusCode::kContract,
            "model sizes must be distinct");
  }

  const std::vector<double> rank_size = average_ranks(sizes);
  const std::vector<double> rank_acc = average_ranks(accs);
  CorrelationResult result;
  result.n = static_cast<int>(n);
  result.m_tests = m_tests;
  result.rho = pearson(rank_size, rank_acc);

  if (n <= 8) {
    // exact permutation tail in the observed direction
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    size_t total = 0, tail = 0;
    std::vector<double> permuted(n);
    do {
      for (size_t i = 0; i < n; ++i) permuted[i] = rank_acc[perm[i]];
      const double r = pearson(rank_size, permuted);
      ++total;
      if (result.rho >= 0.0 ? r >= result.rho - 1e-12
                            : r <= result.rho + 1e-12)
        ++tail;
    } while (std::next_permutation(perm.begin(), perm.end()));
    result.p_value = static_cast<double>(tail) / static_cast<double>(total);
  } else {
    const double rho = std::clamp(result.rho, -0.999999, 0.999999);
    const double t = rho * std::sqrt((static_cast<double>(n) - 2.0) /
                                     (1.0 - rho * rho));
    result.p_value = student_t_sf(std::abs(t), static_cast<double>(n) - 2.0);
  }
  result.significant_after_bonferroni =
      result.p_value < 0.05 / static_cast<double>(m_tests);
  return result;
}

std::vector<HistogramBin> delta_histogram(const std::vector<double>& deltas,
                                          double bin_width) {
  require(bin_width > 0.0, StatusCode::kContract,
          "delta_histogram: bin width must be > 0");
  if (deltas.empty()) return {};
  auto bin_of = [bin_width](double d) {
    return static_cast<long>(std::floor(d / bin_width));
  };
  long lo = bin_of(deltas[0]), hi = bin_of(deltas[0]);
  for (double d : deltas) {
    lo = std::min(lo, bin_of(d));
    hi = std::max(hi, bin_of(d));
  }
  std::vector<HistogramBin> bins;
  for (long m = lo; m <= hi; ++m)
    bins.push_back({static_cast<double>(m) * bin_width, 0});
  for (double d : deltas) bins[static_cast<size_t>(bin_of(d) - lo)].count++;
  return bins;
}

double exceed_fraction(const std::vector<double>& deltas, double threshold) {
  if (deltas.empty()) return 0.0;
  size_t k = 0;
  for (double d : deltas)
    if (std::abs(d) > threshold) ++k;
  return static_cast<double>(k) / static_cast<double>(deltas.size());
}

}  // namespace lmprobe
