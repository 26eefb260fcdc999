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

#include "aurad/ms_ssim.h"

#include <cmath>
#include <string>

#include "aurad/error.h"

namespace aurad {
namespace {

struct Plane {
  int width;
  int height;
  std::vector<double> v;

  double at(int r, int c) const {
    return v[static_cast<std::size_t>(r) * width + c];
  }
};

Plane to_plane(const GrayImage& img) {
  Plane p{img.width(), img.height(), {}};
  p.v.assign(img.pixels().begin(), img.pixels().end());
  return p;
}

std::vector<double> gaussian_kernel(int size, double sigma) {
  std::vector<double> k(size);
  const double center = (size - 1) / 2.0;
  double sum = 0.0;
  for (int i = 0; i < size; ++i) {
    const double d = i - center;
    k[i] = std::exp(-(d * d) / (2.0 * sigma * sigma));
    sum += k[i];
  }
  for (auto& x : k) x /= sum;
  return k;
}

// Separable "valid" correlation.
Plane filter_valid(const Plane& in, const std::vector<double>& k) {
  const int n = static_cast<int>(k.size());
  const int ow = in.width - n + 1;
  const int oh = in.height - n + 1;
  Plane tmp{ow, in.height, std::vector<double>(static_cast<std::size_t>(ow) * in.height)};
  for (int r = 0; r < in.height; ++r) {
    for (int c = 0; c < ow; ++c) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += k[i] * in.at(r, c + i);
      tmp.v[static_cast<std::size_t>(r) * ow + c] = acc;
    }
  }
  Plane out{ow, oh, std::vector<double>(static_cast<std::size_t>(ow) * oh)};
  for (int r = 0; r < oh; ++r) {
    for (int c = 0; c < ow; ++c) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += k[i] * tmp.at(r + i, c);
      out.v[static_cast<std::size_t>(r) * ow + c] = acc;
    }
  }
  return out;
}

Plane product(const Plane& a, const Plane& b) {
  Plane out{a.width, a.height, std::vector<double>(a.v.size())};
  for (std::size_t i = 0; i < a.v.size(); ++i) out.v[i] = a.v[i] * b.v[i];
  return out;
}

Plane downsample(const Plane& in) {
  const int w = in.width / 2;
  const int h = in.height / 2;
  Plane out{w, h, std::vector<double>(static_cast<std::size_t>(w) * h)};
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      out.v[static_cast<std::size_t>(r) * w + c] =
          0.25 * (in.at(2 * r, 2 * c) + in.at(2 * r, 2 * c + 1) +
                  in.at(2 * r + 1, 2 * c) + in.at(2 * r + 1, 2 * c + 1));
    }
  }
  return out;
}

SsimTerms plane_terms(const Plane& x, const Plane& y, const MsSsimConfig& cfg,
                      const std::vector<double>& kernel) {
  const double c1 = (cfg.k1 * cfg.dynamic_range) * (cfg.k1 * cfg.dynamic_range);
  const double c2 = (cfg.k2 * cfg.dynamic_range) * (cfg.k2 * cfg.dynamic_range);
  const Plane mx = filter_valid(x, kernel);
  const Plane my = filter_valid(y, kernel);
  const Plane sxx = filter_valid(product(x, x), kernel);
  const Plane syy = filter_valid(product(y, y), kernel);
  const Plane sxy = filter_valid(product(x, y), kernel);

  double ssim_sum = 0.0;
  double cs_sum = 0.0;
  for (std::size_t i = 0; i < mx.v.size(); ++i) {
    const double ux = mx.v[i];
    const double uy = my.v[i];
    const double vx = sxx.v[i] - ux * ux;
    const double vy = syy.v[i] - uy * uy;
    const double cov = sxy.v[i] - ux * uy;
    const double l = (2.0 * ux * uy + c1) / (ux * ux + uy * uy + c1);
    const double cs = (2.0 * cov + c2) / (vx + vy + c2);
    ssim_sum += l * cs;
    cs_sum += cs;
  }
  const double n = static_cast<double>(mx.v.size());
  return {ssim_sum / n, cs_sum / n};
}

double signed_pow(double v, double w) {
  return v < 0.0 ? -std::pow(-v, w) : std::pow(v, w);
}

void check_inputs(const GrayImage& x, const GrayImage& y,
                  const MsSsimConfig& cfg) {
  if (x.width() != y.width() || x.height() != y.height()) {
    throw DimensionMismatch(x.width(), x.height(), y.width(), y.height());
  }
  if (cfg.scales < 1 || static_cast<int>(cfg.weights.size()) != cfg.scales) {
    throw ValidationError("ms_ssim needs one weight per scale (" +
                          std::to_string(cfg.scales) + " scales, " +
                          std::to_string(cfg.weights.size()) + " weights)");
  }
  if (cfg.window < 1 || cfg.sigma <= 0.0) {
    throw ValidationError("ms_ssim window and sigma must be positive");
  }
  int w = x.width();
  int h = x.height();
  for (int s = 0; s < cfg.scales; ++s) {
    if (w < cfg.window || h < cfg.window) {
      throw TooSmallForScales(std::to_string(x.width()) + "x" +
                              std::to_string(x.height()) + " is too small for " +
                              std::to_string(cfg.scales) + " scales with a " +
                              std::to_string(cfg.window) + "-pixel window");
    }
    w /= 2;
    h /= 2;
  }
}

}  // namespace

SsimTerms ssim_terms(const GrayImage& x, const GrayImage& y,
                     const MsSsimConfig& config) {
  MsSsimConfig single = config;
  single.scales = 1;
  single.weights = {1.0};
  check_inputs(x, y, single);
  return plane_terms(to_plane(x), to_plane(y), config,
                     gaussian_kernel(config.window, config.sigma));
}

double ms_ssim(const GrayImage& x, const GrayImage& y,
               const MsSsimConfig& config) {
  check_inputs(x, y, config);
  const auto kernel = gaussian_kernel(config.window, config.sigma);
  Plane px = to_plane(x);
  Plane py = to_plane(y);
  double result = 1.0;
  for (int s = 0; s < config.scales; ++s) {
    const SsimTerms t = plane_terms(px, py, config, kernel);
    const bool last = s == config.scales - 1;
    result *= signed_pow(last ? t.ssim : t.cs, config.weights[s]);
    if (!last) {
      px = downsample(px);
      py = downsample(py);
    }
  }
  return result;
}

}  // namespace aurad
