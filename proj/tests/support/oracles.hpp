// Copyright 2026 The stancedebate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Reference implementations written independently of the library, used to
// cross-check it on random inputs.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "stancedebate/model.hpp"

namespace stancedebate::testing {

struct StanceOracle {
  std::vector<ScoredComment> support;
  std::vector<ScoredComment> oppose;
};

// Full sort of every index, then take the signed extremes.
inline StanceOracle brute_force_stances(std::span<const ScoredComment> scored, std::size_t k) {
  std::vector<std::size_t> idx(scored.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto by = [&](bool positive) {
    std::vector<std::size_t> sel;
    for (std::size_t i : idx) {
      if (positive ? scored[i].score > 0 : scored[i].score < 0) sel.push_back(i);
    }
    std::sort(sel.begin(), sel.end(), [&](std::size_t a, std::size_t b) {
      const double sa = positive ? scored[a].score : -scored[a].score;
      const double sb = positive ? scored[b].score : -scored[b].score;
      if (sa != sb) return sa > sb;
      if (scored[a].comment.delay() != scored[b].comment.delay()) {
        return scored[a].comment.delay() < scored[b].comment.delay();
      }
      return a < b;
    });
    if (sel.size() > k) sel.resize(k);
    std::vector<ScoredComment> out;
    for (std::size_t i : sel) out.push_back(scored[i]);
    return out;
  };
  return {by(true), by(false)};
}

// Scores on a coarse grid and delays from a small set so ties are common.
inline std::vector<ScoredComment> random_scored(std::mt19937_64& rng, std::size_t n) {
  std::vector<ScoredComment> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double score = static_cast<double>(static_cast<int>(rng() % 21) - 10) / 10.0;
    const double delay = static_cast<double>(rng() % 6) * 30.0;
    out.push_back({Comment("comment-" + std::to_string(i), delay), score, "r"});
  }
  return out;
}

struct MetricOracle {
  double accuracy, rumor_f1, nonrumor_f1, macro_f1;
};

inline MetricOracle count_metrics(std::span<const Label> gold, std::span<const Label> pred) {
  double tp = 0, fp = 0, tn = 0, fn = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool g = gold[i] == Label::Rumor;
    const bool p = pred[i] == Label::Rumor;
    tp += g && p;
    fn += g && !p;
    fp += !g && p;
    tn += !g && !p;
  }
  auto f1 = [](double hit, double miss_a, double miss_b) {
    const double denom = 2 * hit + miss_a + miss_b;
    return denom == 0 ? 0.0 : 2 * hit / denom;
  };
  const double rf1 = f1(tp, fp, fn);
  const double nf1 = f1(tn, fn, fp);
  return {(tp + tn) / static_cast<double>(gold.size()), rf1, nf1, (rf1 + nf1) / 2};
}

}  // namespace stancedebate::testing
