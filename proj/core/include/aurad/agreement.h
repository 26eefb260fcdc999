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

// Inter-rater agreement statistics over a complete items x raters grid.

#ifndef AURAD_AGREEMENT_H_
#define AURAD_AGREEMENT_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace aurad {

class RatingMatrix {
 public:
  // One row per item, one column per rater. Throws ValidationError on a
  // ragged grid, no items, or fewer than two raters.
  explicit RatingMatrix(const std::vector<std::vector<int>>& rows);
  RatingMatrix(std::size_t items, std::size_t raters, std::vector<int> values);

  std::size_t items() const { return items_; }
  std::size_t raters() const { return raters_; }
  int at(std::size_t item, std::size_t rater) const {
    return values_[item * raters_ + rater];
  }
  std::span<const int> values() const { return values_; }

 private:
  std::size_t items_;
  std::size_t raters_;
  std::vector<int> values_;
};

struct IccResult {
  double icc;
  double ms_r;  // between items
  double ms_c;  // between raters
  double ms_e;  // residual
};

struct KappaResult {
  double kappa;
  double p_bar;
  double p_bar_e;
};

struct AgreementStats {
  std::optional<IccResult> icc;
  std::optional<KappaResult> fleiss_kappa;
};

// (MS_R - MS_E) / (MS_R + (k - 1) MS_E) with mean squares from the two-way
// ANOVA decomposition. Needs at least two items. Throws DegenerateVariance
// when MS_R and MS_E are both zero.
IccResult icc_2_1(const RatingMatrix& r);

// Ratings are category indices 0..categories-1; anything else throws
// OutOfRangeRating. Throws DegenerateMarginals when chance agreement is 1.
KappaResult fleiss_kappa(const RatingMatrix& r, int categories);

// Realism scores 1..5 mapped to 1 when >= 4. Throws OutOfRangeRating.
int binarize_realism(int score);
std::vector<int> binarize_realism(std::span<const int> scores);
RatingMatrix binarize_realism(const RatingMatrix& r);

// Arithmetic mean; throws DegenerateInput on an empty list.
double mean(std::span<const double> values);

}  // namespace aurad

#endif  // AURAD_AGREEMENT_H_
