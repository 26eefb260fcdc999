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

#include "aurad/frechet.h"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "aurad/error.h"

namespace aurad {
namespace {

constexpr double kClip = 1e-10;

using Matrix = Eigen::MatrixXd;

Matrix to_matrix(const FeatureGaussian& g) {
  const auto n = static_cast<Eigen::Index>(g.dim());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = g.cov(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  return m;
}

double psd_tolerance(const Eigen::VectorXd& eig) {
  const double scale = eig.size() == 0 ? 0.0 : eig.cwiseAbs().maxCoeff();
  return 1e-8 * std::max(1.0, scale);
}

// Eigenvalues of a symmetric matrix with the PSD check and clipping applied.
Eigen::VectorXd clipped_eigenvalues(const Eigen::VectorXd& eig,
                                    const char* what) {
  const double tol = psd_tolerance(eig);
  Eigen::VectorXd out = eig;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out(i) < -tol) {
      throw NonPsdCovariance(std::string(what) + " has eigenvalue " +
                             std::to_string(out(i)));
    }
    if (out(i) < kClip) out(i) = 0.0;
  }
  return out;
}

Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) {
    throw NonPsdCovariance("eigendecomposition did not converge");
  }
  const Eigen::VectorXd ev = clipped_eigenvalues(es.eigenvalues(), "covariance");
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
         es.eigenvectors().transpose();
}

bool is_separator(char c) {
  return c == ',' || c == ' ' || c == '\t' || c == '\r';
}

}  // namespace

FeatureGaussian::FeatureGaussian(std::vector<double> mean,
                                 std::vector<double> covariance)
    : mean_(std::move(mean)), covariance_(std::move(covariance)) {
  const std::size_t n = mean_.size();
  if (covariance_.size() != n * n) {
    throw DimensionMismatch("covariance has " +
                            std::to_string(covariance_.size()) +
                            " entries for a mean of dimension " +
                            std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = covariance_[i * n + j];
      const double b = covariance_[j * n + i];
      if (std::abs(a - b) > 1e-9 * std::max({1.0, std::abs(a), std::abs(b)})) {
        throw ValidationError("covariance is not symmetric at (" +
                              std::to_string(i) + ", " + std::to_string(j) +
                              ")");
      }
    }
  }
}

FeatureGaussian gaussian_stats(std::span<const FeatureVector> features) {
  if (features.size() < 2) {
    throw TooFewSamples("need at least 2 feature vectors, got " +
                        std::to_string(features.size()));
  }
  const std::size_t d = features.front().size();
  for (const auto& f : features) {
    if (f.size() != d) {
      throw DimensionMismatch("feature vectors of dimension " +
                              std::to_string(d) + " and " +
                              std::to_string(f.size()));
    }
  }
  const double n = static_cast<double>(features.size());
  std::vector<double> mean(d, 0.0);
  for (const auto& f : features) {
    for (std::size_t i = 0; i < d; ++i) mean[i] += f[i];
  }
  for (auto& m : mean) m /= n;

  std::vector<double> cov(d * d, 0.0);
  for (const auto& f : features) {
    for (std::size_t i = 0; i < d; ++i) {
      const double di = f[i] - mean[i];
      for (std::size_t j = i; j < d; ++j) cov[i * d + j] += di * (f[j] - mean[j]);
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      cov[i * d + j] /= (n - 1.0);
      cov[j * d + i] = cov[i * d + j];
    }
  }
  return FeatureGaussian(std::move(mean), std::move(cov));
}

double frechet_distance(const FeatureGaussian& p, const FeatureGaussian& q) {
  if (p.dim() != q.dim()) {
    throw DimensionMismatch("feature dimensions " + std::to_string(p.dim()) +
                            " and " + std::to_string(q.dim()));
  }
  if (p.dim() == 0) return 0.0;

  double mean_term = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const double d = p.mean()[i] - q.mean()[i];
    mean_term += d * d;
  }

  const Matrix s1 = to_matrix(p);
  const Matrix s2 = to_matrix(q);
  // The second covariance also has to be PSD even though only the first
  // one is square-rooted.
  {
    Eigen::SelfAdjointEigenSolver<Matrix> es(s2, Eigen::EigenvaluesOnly);
    clipped_eigenvalues(es.eigenvalues(), "covariance");
  }
  const Matrix r1 = psd_sqrt(s1);
  Matrix middle = r1 * s2 * r1;
  middle = 0.5 * (middle + middle.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(middle, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NonPsdCovariance("eigendecomposition did not converge");
  }
  const Eigen::VectorXd ev =
      clipped_eigenvalues(es.eigenvalues(), "covariance product");
  const double cross = ev.cwiseSqrt().sum();

  const double d2 = mean_term + s1.trace() + s2.trace() - 2.0 * cross;
  return std::max(0.0, d2);
}

std::vector<FeatureVector> parse_feature_text(std::string_view text) {
  std::vector<FeatureVector> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    FeatureVector v;
    std::size_t i = 0;
    while (i < line.size() && is_separator(line[i])) ++i;
    if (i == line.size() || line[i] == '#') continue;
    while (i < line.size()) {
      std::size_t j = i;
      while (j < line.size() && !is_separator(line[j])) ++j;
      const std::string_view tok = line.substr(i, j - i);
      double value = 0.0;
      const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() ||
          !std::isfinite(value)) {
        throw ValidationError("bad feature value '" + std::string(tok) +
                              "' on line " + std::to_string(line_no));
      }
      v.push_back(value);
      i = j;
      while (i < line.size() && is_separator(line[i])) ++i;
    }
    if (!out.empty() && v.size() != out.front().size()) {
      throw DimensionMismatch("line " + std::to_string(line_no) + " has " +
                              std::to_string(v.size()) + " values, expected " +
                              std::to_string(out.front().size()));
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<FeatureVector> load_feature_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UnreadableFile(path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_feature_text(ss.str());
}

}  // namespace aurad
