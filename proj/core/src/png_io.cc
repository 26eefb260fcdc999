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

#include "aurad/png_io.h"

#include <png.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <memory>

#include "aurad/error.h"

namespace aurad {
namespace {

enum class PixelKind { kGray, kIndexed };

struct Decoded {
  int width = 0;
  int height = 0;
  PixelKind kind = PixelKind::kGray;
  std::vector<std::uint8_t> pixels;
  char message[256] = {0};
};

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

void on_png_error(png_structp png, png_const_charp msg) {
  auto* out = static_cast<char*>(png_get_error_ptr(png));
  if (out) std::snprintf(out, 256, "%s", msg);
  png_longjmp(png, 1);
}

void on_png_warning(png_structp, png_const_charp) {}

// Only trivially destructible locals live in the frames that setjmp/longjmp
// cross; `out` is owned by the caller.
bool decode_png(std::FILE* fp, Decoded* out) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, out->message,
                                           on_png_error, on_png_warning);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  png_init_io(png, fp);
  png_read_info(png, info);
  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const int color = png_get_color_type(png, info);
  const int depth = png_get_bit_depth(png, info);
  if (depth > 8) {
    std::snprintf(out->message, sizeof(out->message),
                  "expected 8-bit samples, got %d-bit", depth);
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  if (color == PNG_COLOR_TYPE_PALETTE) {
    out->kind = PixelKind::kIndexed;
    png_set_packing(png);
  } else if (color == PNG_COLOR_TYPE_GRAY ||
             color == PNG_COLOR_TYPE_GRAY_ALPHA) {
    out->kind = PixelKind::kGray;
    if (depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (color == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_strip_alpha(png);
  } else {
    std::snprintf(out->message, sizeof(out->message),
                  "expected a grayscale or indexed PNG");
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  png_read_update_info(png, info);
  if (png_get_rowbytes(png, info) != width) {
    std::snprintf(out->message, sizeof(out->message),
                  "unexpected row layout");
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  out->width = static_cast<int>(width);
  out->height = static_cast<int>(height);
  out->pixels.resize(static_cast<std::size_t>(width) * height);
  for (png_uint_32 r = 0; r < height; ++r) {
    png_read_row(png, out->pixels.data() + static_cast<std::size_t>(r) * width,
                 nullptr);
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

Decoded read_png(const std::filesystem::path& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw UnreadableFile(path.string(), "cannot open");
  std::array<unsigned char, 8> sig{};
  if (std::fread(sig.data(), 1, sig.size(), fp.get()) != sig.size() ||
      png_sig_cmp(sig.data(), 0, sig.size()) != 0) {
    throw UnreadableFile(path.string(), "not a PNG file");
  }
  std::rewind(fp.get());
  Decoded decoded;
  if (!decode_png(fp.get(), &decoded)) {
    throw UnreadableFile(path.string(), decoded.message[0]
                                            ? decoded.message
                                            : "PNG decoding failed");
  }
  return decoded;
}

struct Encode {
  int width;
  int height;
  const std::uint8_t* pixels;
  bool indexed;
  const png_color* palette;
  int palette_size;
  char message[256];
};

bool encode_png(std::FILE* fp, Encode* in) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, in->message,
                                            on_png_error, on_png_warning);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, static_cast<png_uint_32>(in->width),
               static_cast<png_uint_32>(in->height), 8,
               in->indexed ? PNG_COLOR_TYPE_PALETTE : PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  if (in->indexed) png_set_PLTE(png, info, in->palette, in->palette_size);
  png_write_info(png, info);
  for (int r = 0; r < in->height; ++r) {
    png_write_row(png, in->pixels + static_cast<std::size_t>(r) * in->width);
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

void write_png(const std::filesystem::path& path, int width, int height,
               std::span<const std::uint8_t> pixels, bool indexed) {
  // Background, left lung, right lung, heart, mediastinum.
  static const png_color kOrganPalette[kMaxOrganLabel + 1] = {
      {0, 0, 0}, {0, 114, 178}, {230, 159, 0}, {213, 94, 0}, {0, 158, 115}};
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw IoError("cannot open '" + path.string() + "' for writing");
  Encode enc{width,   height,        pixels.data(), indexed,
             kOrganPalette, kMaxOrganLabel + 1, {0}};
  const bool ok = encode_png(fp.get(), &enc);
  const bool closed = std::fclose(fp.release()) == 0;
  if (!ok || !closed) {
    throw IoError("failed writing '" + path.string() + "'" +
                  (enc.message[0] ? std::string(": ") + enc.message : ""));
  }
}

}  // namespace

OrganMap load_organ_map(const std::filesystem::path& path) {
  Decoded d = read_png(path);
  if (d.kind != PixelKind::kIndexed) {
    throw UnreadableFile(path.string(), "organ map must be an indexed PNG");
  }
  return OrganMap(d.width, d.height, std::move(d.pixels));
}

void save_organ_map(const std::filesystem::path& path, const OrganMap& organ) {
  write_png(path, organ.width(), organ.height(), organ.labels(), true);
}

PathologyAnnotation load_pathology_mask(const std::filesystem::path& path,
                                        DiseaseClass disease,
                                        const OrganMap* expected) {
  Decoded d = read_png(path);
  if (d.kind != PixelKind::kGray) {
    throw UnreadableFile(path.string(),
                         "pathology mask must be 8-bit grayscale");
  }
  for (auto& p : d.pixels) p = p > 127 ? 1 : 0;
  RasterMask mask(d.width, d.height, std::move(d.pixels));
  if (expected && (mask.width() != expected->width() ||
                   mask.height() != expected->height())) {
    throw DimensionMismatch(mask.width(), mask.height(), expected->width(),
                            expected->height());
  }
  return PathologyAnnotation{disease, std::move(mask)};
}

void save_pathology_mask(const std::filesystem::path& path,
                         const RasterMask& mask) {
  std::vector<std::uint8_t> pixels(mask.size());
  auto bits = mask.bits();
  for (std::size_t i = 0; i < pixels.size(); ++i) pixels[i] = bits[i] ? 255 : 0;
  write_png(path, mask.width(), mask.height(), pixels, false);
}

GrayImage load_image(const std::filesystem::path& path) {
  Decoded d = read_png(path);
  if (d.kind != PixelKind::kGray) {
    throw UnreadableFile(path.string(), "image must be 8-bit grayscale");
  }
  return GrayImage(d.width, d.height, std::move(d.pixels));
}

void save_image(const std::filesystem::path& path, const GrayImage& image) {
  write_png(path, image.width(), image.height(), image.pixels(), false);
}

std::string pathology_file_name(const std::string& sample_id,
                                DiseaseClass disease) {
  return sample_id + "__" + class_file_token(disease) + ".png";
}

std::optional<DiseaseClass> class_from_file_name(
    const std::string& file_name) {
  constexpr std::string_view kExt = ".png";
  if (file_name.size() <= kExt.size() ||
      file_name.compare(file_name.size() - kExt.size(), kExt.size(), kExt) !=
          0) {
    return std::nullopt;
  }
  const std::string stem = file_name.substr(0, file_name.size() - kExt.size());
  const auto sep = stem.rfind("__");
  if (sep == std::string::npos) return std::nullopt;
  return class_from_file_token(stem.substr(sep + 2));
}

std::vector<PathologyAnnotation> load_pathology_dir(
    const std::filesystem::path& dir, const OrganMap* expected) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw UnreadableFile(dir.string(), "not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (entry.path().extension() != ".png" || name.find("__") == std::string::npos) {
      continue;
    }
    files.push_back(entry.path());
  }
  if (ec) throw UnreadableFile(dir.string(), ec.message());
  std::sort(files.begin(), files.end());
  std::vector<PathologyAnnotation> out;
  for (const auto& f : files) {
    const auto disease = class_from_file_name(f.filename().string());
    if (!disease) {
      throw ValidationError("unknown pathology class token in '" +
                            f.filename().string() + "'");
    }
    out.push_back(load_pathology_mask(f, *disease, expected));
  }
  return out;
}

}  // namespace aurad
