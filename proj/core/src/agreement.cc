/* Copyright 2026 The aurad Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "aurad/agreement.h"

#include <algorithm>
#include <string>

#include "aurad/error.h"

namespace aurad {
namespace {

void check_shape(std::size_t items, std::size_t raters, std::size_t cells) {
  if (items == 0) throw ValidationError("rating matrix has no items");
  if (raters < 2) {
    throw ValidationError("rating matrix needs at least 2 raters, got " +
                          std::to_string(raters));
  }
  if (cells != items * raters) {
    throw ValidationError("rating matrix is incomplete: " +
                          std::to_string(cells) + " cells for " +
                          std::to_string(items) + "x" + std::to_string(raters));
  }
}

}  // namespace

RatingMatrix::RatingMatrix(const std::vector<std::vector<int>>& rows)
    : items_(rows.size()), raters_(rows.empty() ? 0 : rows.front().size()) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != raters_) {
      throw ValidationError("rating matrix row " + std::to_string(i) +
                            " has " + std::to_string(rows[i].size()) +
                            " ratings, expected " + std::to_string(raters_));
    }
    values_.insert(values_.end(), rows[i].begin(), rows[i].end());
  }
  check_shape(items_, raters_, values_.size());
}

RatingMatrix::RatingMatrix(std::size_t items, std::size_t raters,
                           std::vector<int> values)
    : items_(items), raters_(raters), values_(std::move(values)) {
  check_shape(items_, raters_, values_.size());
}

IccResult icc_2_1(const RatingMatrix& r) {
  const std::size_t n = r.items();
  const std::size_t k = r.raters();
  if (n < 2) throw ValidationError("ICC needs at least 2 items");

  std::vector<double> row_mean(n, 0.0);
  std::vector<double> col_mean(k, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double x = r.at(i, j);
      row_mean[i] += x;
      col_mean[j] += x;
      grand += x;
    }
  }
  for (auto& m : row_mean) m /= static_cast<double>(k);
  for (auto& m : col_mean) m /= static_cast<double>(n);
  grand /= static_cast<double>(n * k);

  double ss_r = 0.0;
  for (double m : row_mean) ss_r += (m - grand) * (m - grand);
  ss_r *= static_cast<double>(k);
  double ss_c = 0.0;
  for (double m : col_mean) ss_c += (m - grand) * (m - grand);
  ss_c *= static_cast<double>(n);
  // Residuals are summed directly rather than by subtraction so MS_E can
  // never come out negative.
  double ss_e = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double e = r.at(i, j) - row_mean[i] - col_mean[j] + grand;
      ss_e += e * e;
    }
  }

  IccResult out{};
  out.ms_r = ss_r / static_cast<double>(n - 1);
  out.ms_c = ss_c / static_cast<double>(k - 1);
  out.ms_e = ss_e / static_cast<double>((n - 1) * (k - 1));
  const double denom = out.ms_r + static_cast<double>(k - 1) * out.ms_e;
  if (denom <= 1e-300) {
    throw DegenerateVariance(
        "ICC is undefined: no variance between items and no residual");
  }
  out.icc = (out.ms_r - out.ms_e) / denom;
  return out;
}

KappaResult fleiss_kappa(const RatingMatrix& r, int categories) {
  if (categories < 1) throw ValidationError("need at least one category");
  const std::size_t n = r.items();
  const std::size_t k = r.raters();
  const auto m = static_cast<std::size_t>(categories);

  std::vector<double> totals(m, 0.0);
  std::vector<std::size_t> counts(m);
  double p_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t j = 0; j < k; ++j) {
      const int v = r.at(i, j);
      if (v < 0 || v >= categories) {
        throw OutOfRangeRating("rating " + std::to_string(v) +
                               " outside 0.." + std::to_string(categories - 1));
      }
      ++counts[static_cast<std::size_t>(v)];
    }
    double sq = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
      sq += static_cast<double>(counts[c] * counts[c]);
      totals[c] += static_cast<double>(counts[c]);
    }
    p_sum += (sq - static_cast<double>(k)) / static_cast<double>(k * (k - 1));
  }

  KappaResult out{};
  out.p_bar = p_sum / static_cast<double>(n);
  out.p_bar_e = 0.0;
  for (double t : totals) {
    const double p = t / static_cast<double>(n * k);
    out.p_bar_e += p * p;
  }
  if (out.p_bar_e >= 1.0 - 1e-12) {
    throw DegenerateMarginals(
        "kappa is undefined: every rating falls in one category");
  }
  out.kappa = (out.p_bar - out.p_bar_e) / (1.0 - out.p_bar_e);
  return out;
}

int binarize_realism(int score) {
  if (score < 1 || score > 5) {
    throw OutOfRangeRating("realism score " + std::to_string(score) +
                           " outside 1..5");
  }
  return score >= 4 ? 1 : 0;
}

std::vector<int> binarize_realism(std::span<const int> scores) {
  std::vector<int> out;
  out.reserve(scores.size());
  for (int s : scores) out.push_back(binarize_realism(s));
  return out;
}

RatingMatrix binarize_realism(const RatingMatrix& r) {
  return RatingMatrix(r.items(), r.raters(), binarize_realism(r.values()));
}

double mean(std::span<const double> values) {
  if (values.empty()) throw DegenerateInput("mean of an empty list");
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

}  // namespace aurad
