// Copyright 2026 Proxylight Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace proxylight {

// H x W x C raster with interleaved channels and intensities in [0, 1].
// Channels are 1 (gray) or 3 (red, green, blue).
struct RasterImage {
  int height = 0;
  int width = 0;
  int channels = 1;
  std::vector<double> data;

  RasterImage() = default;
  RasterImage(int h, int w, int c, double fill = 0.0);

  double& at(int r, int c, int ch) {
    return data[(static_cast<std::size_t>(r) * width + c) * channels + ch];
  }
  double at(int r, int c, int ch) const {
    return data[(static_cast<std::size_t>(r) * width + c) * channels + ch];
  }

  std::size_t sample_count() const { return data.size(); }
  double mean() const;
  bool valid() const;
};

enum class ImageFormat { png, jpeg };

// Picks the codec from a path extension (.png/.jpg/.jpeg, case-insensitive).
ImageFormat format_from_extension(const std::filesystem::path& path);

// 8-bit PNG or JPEG bytes -> raster. Byte u maps to u/255. Alpha is dropped,
// palettes are expanded, channel order stays R,G,B. Malformed input throws
// std::runtime_error naming the offending format.
RasterImage decode_image(const std::uint8_t* bytes, std::size_t size);
RasterImage decode_image(const std::vector<std::uint8_t>& bytes);

// Raster -> encoded bytes. Intensity v maps to round(clamp(v,0,1)*255),
// round half up. PNG round-trips losslessly at 8-bit precision.
std::vector<std::uint8_t> encode_image(const RasterImage& img, ImageFormat format);

RasterImage load_image(const std::filesystem::path& path);
void save_image(const RasterImage& img, const std::filesystem::path& path, ImageFormat format);

// Bilinear resize with edge-clamped sampling, output clamped to [0, 1].
RasterImage resize(const RasterImage& img, int target_h, int target_w);

// Synthetic fixtures used by the test suites and the acceptance bench.
// Columns < edge_col get `low`, the rest `high`.
RasterImage synth_step_image(int h, int w, int edge_col, double low, double high);
// Photo-like field: low-frequency shading, a few soft blobs, light noise.
RasterImage synth_natural_image(int h, int w, int channels, std::uint64_t seed);
// Same texture family pushed to a mean below 0.1.
RasterImage synth_dark_image(int h, int w, int channels, std::uint64_t seed);

}  // namespace proxylight
