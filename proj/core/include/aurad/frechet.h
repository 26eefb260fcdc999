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

// Frechet distance between Gaussian fits of feature embeddings.
//
// Features come from an external encoder; this module never links one. The
// text format read by load_feature_file is one vector per line, components
// separated by whitespace and/or commas. Blank lines and lines starting with
// '#' are ignored.

#ifndef AURAD_FRECHET_H_
#define AURAD_FRECHET_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace aurad {

using FeatureVector = std::vector<double>;

class FeatureGaussian {
 public:
  // `covariance` is row-major dim x dim. Throws DimensionMismatch when the
  // sizes disagree and ValidationError when it is not symmetric.
  FeatureGaussian(std::vector<double> mean, std::vector<double> covariance);

  std::size_t dim() const { return mean_.size(); }
  const std::vector<double>& mean() const { return mean_; }
  const std::vector<double>& covariance() const { return covariance_; }
  double cov(std::size_t i, std::size_t j) const {
    return covariance_[i * mean_.size() + j];
  }

 private:
  std::vector<double> mean_;
  std::vector<double> covariance_;
};

// Sample mean and unbiased (n - 1) covariance. Throws TooFewSamples for
// fewer than two vectors and DimensionMismatch for ragged input.
FeatureGaussian gaussian_stats(std::span<const FeatureVector> features);

// Squared distance |mu1 - mu2|^2 + Tr(S1 + S2 - 2 (S1 S2)^(1/2)).
// The cross term is evaluated as the trace of the square root of the
// symmetric matrix S1^(1/2) S2 S1^(1/2); eigenvalues in [-tol, 1e-10] are
// clipped to zero and anything below -tol raises NonPsdCovariance.
double frechet_distance(const FeatureGaussian& p, const FeatureGaussian& q);

std::vector<FeatureVector> load_feature_file(const std::filesystem::path& path);
std::vector<FeatureVector> parse_feature_text(std::string_view text);

}  // namespace aurad

#endif  // AURAD_FRECHET_H_
