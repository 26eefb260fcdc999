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

#include "support/scenes.h"

#include <png.h>
#include <unistd.h>

#include <atomic>
#include <fstream>
#include <sstream>

namespace aurad::testing {
namespace {

void paint(std::vector<std::uint8_t>& labels, const RasterMask& m,
           OrganLabel label, bool overwrite) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (m[i] && (overwrite || labels[i] == 0)) {
      labels[i] = static_cast<std::uint8_t>(label);
    }
  }
}

}  // namespace

RasterMask ellipse(int width, int height, double center_row, double center_col,
                   double semi_rows, double semi_cols) {
  return RasterMask::from_predicate(width, height, [&](int r, int c) {
    const double dr = (r - center_row) / semi_rows;
    const double dc = (c - center_col) / semi_cols;
    return dr * dr + dc * dc <= 1.0;
  });
}

RasterMask rectangle(int width, int height, int row0, int col0, int row1,
                     int col1) {
  return RasterMask::from_predicate(width, height, [&](int r, int c) {
    return r >= row0 && r <= row1 && c >= col0 && c <= col1;
  });
}

OrganMap chest_organ(int width, int height) {
  const double sx = width / 128.0;
  const double sy = height / 128.0;
  std::vector<std::uint8_t> labels(static_cast<std::size_t>(width) * height, 0);
  paint(labels, ellipse(width, height, 62 * sy, 36 * sx, 46 * sy, 21 * sx),
        OrganLabel::kRightLung, true);
  paint(labels, ellipse(width, height, 62 * sy, 92 * sx, 46 * sy, 21 * sx),
        OrganLabel::kLeftLung, true);
  paint(labels, ellipse(width, height, 90 * sy, 66 * sx, 17 * sy, 21 * sx),
        OrganLabel::kHeart, true);
  paint(labels,
        rectangle(width, height, static_cast<int>(18 * sy),
                  static_cast<int>(58 * sx), static_cast<int>(74 * sy),
                  static_cast<int>(70 * sx)),
        OrganLabel::kMediastinum, false);
  return OrganMap(width, height, std::move(labels));
}

std::vector<PathologyAnnotation> structured_example_masks() {
  return {{DiseaseClass::kFibrosis, rectangle(128, 128, 58, 28, 62, 33)},
          {DiseaseClass::kCardiomegaly, rectangle(128, 128, 86, 60, 94, 95)}};
}

OrganMap ctr_organ(int heart_width, int thorax_width) {
  const int width = std::max(heart_width, thorax_width);
  const int height = 20;
  std::vector<std::uint8_t> labels(static_cast<std::size_t>(width) * height, 0);
  const int split = thorax_width / 2;
  for (int r = 0; r < 10; ++r) {
    for (int c = 0; c < thorax_width; ++c) {
      labels[static_cast<std::size_t>(r) * width + c] =
          static_cast<std::uint8_t>(c < split ? OrganLabel::kRightLung
                                              : OrganLabel::kLeftLung);
    }
  }
  for (int r = 12; r < 18; ++r) {
    for (int c = 0; c < heart_width; ++c) {
      labels[static_cast<std::size_t>(r) * width + c] =
          static_cast<std::uint8_t>(OrganLabel::kHeart);
    }
  }
  return OrganMap(width, height, std::move(labels));
}

OrganMap random_organ(SeededRng& rng, int width, int height) {
  std::vector<std::uint8_t> labels(static_cast<std::size_t>(width) * height, 0);
  const double w = width;
  const double h = height;
  const double lung_rows = h * rng.uniform(0.25, 0.42);
  const double lung_cols = w * rng.uniform(0.12, 0.22);
  paint(labels,
        ellipse(width, height, h * rng.uniform(0.4, 0.55), w * rng.uniform(0.22, 0.32),
                lung_rows, lung_cols),
        OrganLabel::kRightLung, true);
  if (rng.uniform() < 0.95) {
    paint(labels,
          ellipse(width, height, h * rng.uniform(0.4, 0.55),
                  w * rng.uniform(0.68, 0.78), h * rng.uniform(0.25, 0.42),
                  w * rng.uniform(0.12, 0.22)),
          OrganLabel::kLeftLung, true);
  }
  if (rng.uniform() < 0.9) {
    paint(labels,
          ellipse(width, height, h * rng.uniform(0.62, 0.75), w * rng.uniform(0.45, 0.55),
                  h * rng.uniform(0.08, 0.16), w * rng.uniform(0.1, 0.2)),
          OrganLabel::kHeart, rng.uniform() < 0.7);
  }
  if (rng.uniform() < 0.9) {
    const int c0 = static_cast<int>(w * rng.uniform(0.44, 0.48));
    const int c1 = static_cast<int>(w * rng.uniform(0.52, 0.56));
    paint(labels,
          rectangle(width, height, static_cast<int>(h * 0.15), c0,
                    static_cast<int>(h * rng.uniform(0.5, 0.65)), c1),
          OrganLabel::kMediastinum, false);
  }
  return OrganMap(width, height, std::move(labels));
}

std::vector<PathologyAnnotation> random_annotations(SeededRng& rng, int width,
                                                    int height) {
  std::vector<PathologyAnnotation> out;
  const int count = static_cast<int>(rng.below(5));
  for (int i = 0; i < count; ++i) {
    const DiseaseClass disease = kPathologyClasses[rng.below(kPathologyClasses.size())];
    RasterMask m(width, height);
    const int blobs = 1 + static_cast<int>(rng.below(3));
    for (int b = 0; b < blobs; ++b) {
      const double cr = rng.uniform(0, height);
      const double cc = rng.uniform(0, width);
      if (rng.uniform() < 0.5) {
        m = unite(m, ellipse(width, height, cr, cc, rng.uniform(1, height * 0.3),
                             rng.uniform(1, width * 0.3)));
      } else {
        const int r0 = static_cast<int>(cr);
        const int c0 = static_cast<int>(cc);
        m = unite(m, rectangle(width, height, r0, c0,
                               r0 + static_cast<int>(rng.below(height / 2 + 1)),
                               c0 + static_cast<int>(rng.below(width / 2 + 1))));
      }
    }
    out.push_back({disease, std::move(m)});
  }
  return out;
}

RasterMask random_mask(SeededRng& rng, int width, int height, double density) {
  return RasterMask::from_predicate(width, height,
                                    [&](int, int) { return rng.uniform() < density; });
}

GrayImage random_image(SeededRng& rng, int width, int height) {
  std::vector<std::uint8_t> px(static_cast<std::size_t>(width) * height);
  for (auto& p : px) p = static_cast<std::uint8_t>(rng.below(256));
  return GrayImage(width, height, std::move(px));
}

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          (tag + "_" + std::to_string(::getpid()) + "_" +
           std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

void write_indexed_png(const std::filesystem::path& path, int width, int height,
                       const std::vector<std::uint8_t>& indices) {
  FILE* fp = std::fopen(path.c_str(), "wb");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                            nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  png_init_io(png, fp);
  png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_PALETTE,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_color palette[16];
  for (int i = 0; i < 16; ++i) {
    palette[i].red = palette[i].green = palette[i].blue =
        static_cast<png_byte>(i * 16);
  }
  png_set_PLTE(png, info, palette, 16);
  png_write_info(png, info);
  for (int r = 0; r < height; ++r) {
    png_write_row(png, indices.data() + static_cast<std::size_t>(r) * width);
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace aurad::testing
