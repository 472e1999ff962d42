// Copyright 2026 Proxylight Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "proxylight/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

#include <jpeglib.h>
#include <png.h>

namespace proxylight {

RasterImage::RasterImage(int h, int w, int c, double fill)
    : height(h), width(w), channels(c),
      data(static_cast<std::size_t>(h) * w * c, fill) {}

double RasterImage::mean() const {
  if (data.empty()) return 0.0;
  double sum = 0.0;
  for (double v : data) sum += v;
  return sum / static_cast<double>(data.size());
}

bool RasterImage::valid() const {
  if (height < 1 || width < 1) return false;
  if (channels != 1 && channels != 3) return false;
  if (data.size() != static_cast<std::size_t>(height) * width * channels) return false;
  for (double v : data)
    if (!(v >= 0.0 && v <= 1.0)) return false;
  return true;
}

ImageFormat format_from_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".png") return ImageFormat::png;
  if (ext == ".jpg" || ext == ".jpeg") return ImageFormat::jpeg;
  throw std::invalid_argument("unsupported image extension: " + path.string());
}

namespace {

constexpr unsigned char kPngSignature[4] = {0x89, 'P', 'N', 'G'};

bool looks_like_png(const std::uint8_t* bytes, std::size_t size) {
  return size >= 4 && std::memcmp(bytes, kPngSignature, 4) == 0;
}

bool looks_like_jpeg(const std::uint8_t* bytes, std::size_t size) {
  return size >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF;
}

struct PngMemReader {
  const std::uint8_t* bytes;
  std::size_t size;
  std::size_t offset;
};

void png_mem_read(png_structp png, png_bytep out, png_size_t len) {
  auto* reader = static_cast<PngMemReader*>(png_get_io_ptr(png));
  if (reader->offset + len > reader->size)
    png_error(png, "unexpected end of data");
  std::memcpy(out, reader->bytes + reader->offset, len);
  reader->offset += len;
}

void png_mem_write(png_structp png, png_bytep in, png_size_t len) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), in, in + len);
}

void png_mem_flush(png_structp) {}

RasterImage decode_png(const std::uint8_t* bytes, std::size_t size) {
  PngMemReader reader{bytes, size, 0};
  std::vector<png_bytep> row_ptrs;
  std::vector<std::uint8_t> pixels;
  RasterImage img;

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("png: failed to allocate decoder");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw std::runtime_error("png: failed to allocate decoder");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error("png: malformed png data");
  }

  png_set_read_fn(png, &reader, png_mem_read);
  png_read_info(png, info);

  const png_uint_32 w = png_get_image_width(png, info);
  const png_uint_32 h = png_get_image_height(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  const int color_type = png_get_color_type(png, info);
  if (bit_depth > 8) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error("png: only 8-bit images are supported");
  }

  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  // Alpha (explicit or via tRNS) is dropped.
  if (png_get_valid(png, info, PNG_INFO_tRNS)) {
    png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
  }
  if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_read_update_info(png, info);

  const int out_channels = static_cast<int>(png_get_channels(png, info));
  const std::size_t row_bytes = png_get_rowbytes(png, info);
  pixels.resize(row_bytes * h);
  row_ptrs.resize(h);
  for (png_uint_32 r = 0; r < h; ++r) row_ptrs[r] = pixels.data() + r * row_bytes;
  png_read_image(png, row_ptrs.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  if (out_channels != 1 && out_channels != 3)
    throw std::runtime_error("png: unsupported channel layout");

  img = RasterImage(static_cast<int>(h), static_cast<int>(w), out_channels);
  const std::size_t n = img.data.size();
  for (std::size_t r = 0; r < h; ++r) {
    const std::uint8_t* src = pixels.data() + r * row_bytes;
    double* dst = img.data.data() + r * w * out_channels;
    for (std::size_t i = 0; i < w * static_cast<std::size_t>(out_channels); ++i)
      dst[i] = src[i] / 255.0;
  }
  (void)n;
  return img;
}

std::vector<std::uint8_t> encode_png(const RasterImage& img, const std::vector<std::uint8_t>& quantized) {
  std::vector<std::uint8_t> out;
  std::vector<png_bytep> row_ptrs(img.height);

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("png: failed to allocate encoder");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw std::runtime_error("png: failed to allocate encoder");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("png: encode failed");
  }

  png_set_write_fn(png, &out, png_mem_write, png_mem_flush);
  png_set_compression_level(png, 6);
  png_set_IHDR(png, info, img.width, img.height, 8,
               img.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  const std::size_t row_bytes = static_cast<std::size_t>(img.width) * img.channels;
  for (int r = 0; r < img.height; ++r)
    row_ptrs[r] = const_cast<png_bytep>(quantized.data() + r * row_bytes);
  png_write_image(png, row_ptrs.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

struct JpegErrorMgr {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

RasterImage decode_jpeg(const std::uint8_t* bytes, std::size_t size) {
  jpeg_decompress_struct cinfo;
  JpegErrorMgr err;
  std::vector<std::uint8_t> pixels;
  RasterImage img;

  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw std::runtime_error(std::string("jpeg: ") + err.message);
  }

  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes, static_cast<unsigned long>(size));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = cinfo.num_components == 1 ? JCS_GRAYSCALE : JCS_RGB;
  jpeg_start_decompress(&cinfo);

  const int w = static_cast<int>(cinfo.output_width);
  const int h = static_cast<int>(cinfo.output_height);
  const int c = cinfo.output_components;
  if (c != 1 && c != 3) {
    jpeg_destroy_decompress(&cinfo);
    throw std::runtime_error("jpeg: unsupported channel layout");
  }
  const std::size_t row_bytes = static_cast<std::size_t>(w) * c;
  pixels.resize(row_bytes * h);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = pixels.data() + cinfo.output_scanline * row_bytes;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);

  img = RasterImage(h, w, c);
  for (std::size_t i = 0; i < img.data.size(); ++i) img.data[i] = pixels[i] / 255.0;
  return img;
}

std::vector<std::uint8_t> encode_jpeg(const RasterImage& img, const std::vector<std::uint8_t>& quantized) {
  jpeg_compress_struct cinfo;
  JpegErrorMgr err;
  unsigned char* buffer = nullptr;
  unsigned long buffer_size = 0;

  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;
  if (setjmp(err.jump)) {
    jpeg_destroy_compress(&cinfo);
    if (buffer) std::free(buffer);
    throw std::runtime_error(std::string("jpeg: ") + err.message);
  }

  jpeg_create_compress(&cinfo);
  jpeg_mem_dest(&cinfo, &buffer, &buffer_size);
  cinfo.image_width = static_cast<JDIMENSION>(img.width);
  cinfo.image_height = static_cast<JDIMENSION>(img.height);
  cinfo.input_components = img.channels;
  cinfo.in_color_space = img.channels == 1 ? JCS_GRAYSCALE : JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, 95, TRUE);
  jpeg_start_compress(&cinfo, TRUE);

  const std::size_t row_bytes = static_cast<std::size_t>(img.width) * img.channels;
  while (cinfo.next_scanline < cinfo.image_height) {
    JSAMPROW row = const_cast<JSAMPROW>(quantized.data() + cinfo.next_scanline * row_bytes);
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);

  std::vector<std::uint8_t> out(buffer, buffer + buffer_size);
  std::free(buffer);
  return out;
}

std::uint8_t quantize(double v) {
  const double clamped = std::clamp(v, 0.0, 1.0);
  return static_cast<std::uint8_t>(std::floor(clamped * 255.0 + 0.5));  // round half up
}

// splitmix64, the usual constants.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct SplitMix {
  std::uint64_t state;
  std::uint64_t next_u64() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t x = state;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double next_range(double lo, double hi) { return lo + (hi - lo) * next_unit(); }
};

}  // namespace

RasterImage decode_image(const std::uint8_t* bytes, std::size_t size) {
  if (looks_like_png(bytes, size)) return decode_png(bytes, size);
  if (looks_like_jpeg(bytes, size)) return decode_jpeg(bytes, size);
  throw std::runtime_error("unknown image format: neither png nor jpeg signature found");
}

RasterImage decode_image(const std::vector<std::uint8_t>& bytes) {
  return decode_image(bytes.data(), bytes.size());
}

std::vector<std::uint8_t> encode_image(const RasterImage& img, ImageFormat format) {
  if (img.height < 1 || img.width < 1 || (img.channels != 1 && img.channels != 3))
    throw std::invalid_argument("encode_image: invalid image shape");
  std::vector<std::uint8_t> quantized(img.data.size());
  for (std::size_t i = 0; i < img.data.size(); ++i) quantized[i] = quantize(img.data[i]);
  return format == ImageFormat::png ? encode_png(img, quantized) : encode_jpeg(img, quantized);
}

RasterImage load_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return decode_image(bytes);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void save_image(const RasterImage& img, const std::filesystem::path& path, ImageFormat format) {
  const std::vector<std::uint8_t> bytes = encode_image(img, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

RasterImage resize(const RasterImage& img, int target_h, int target_w) {
  if (target_h < 1 || target_w < 1)
    throw std::invalid_argument("resize: target dimensions must be at least 1");
  if (target_h == img.height && target_w == img.width) return img;

  RasterImage out(target_h, target_w, img.channels);
  const double scale_r = static_cast<double>(img.height) / target_h;
  const double scale_c = static_cast<double>(img.width) / target_w;
  for (int r = 0; r < target_h; ++r) {
    // Pixel-center alignment; the source coordinate is clamped before the
    // floor/fraction split so edge samples interpolate from the edge pixel.
    const double sr =
        std::clamp((r + 0.5) * scale_r - 0.5, 0.0, static_cast<double>(img.height - 1));
    const int r0 = static_cast<int>(sr);
    const int r1 = std::min(r0 + 1, img.height - 1);
    const double fr = sr - r0;
    for (int c = 0; c < target_w; ++c) {
      const double sc =
          std::clamp((c + 0.5) * scale_c - 0.5, 0.0, static_cast<double>(img.width - 1));
      const int c0 = static_cast<int>(sc);
      const int c1 = std::min(c0 + 1, img.width - 1);
      const double fc = sc - c0;
      for (int ch = 0; ch < img.channels; ++ch) {
        const double top = img.at(r0, c0, ch) * (1.0 - fc) + img.at(r0, c1, ch) * fc;
        const double bot = img.at(r1, c0, ch) * (1.0 - fc) + img.at(r1, c1, ch) * fc;
        out.at(r, c, ch) = std::clamp(top * (1.0 - fr) + bot * fr, 0.0, 1.0);
      }
    }
  }
  return out;
}

RasterImage synth_step_image(int h, int w, int edge_col, double low, double high) {
  if (edge_col < 0 || edge_col >= w)
    throw std::invalid_argument("synth_step_image: edge_col out of range");
  RasterImage out(h, w, 1);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c)
      out.at(r, c, 0) = c < edge_col ? low : high;
  return out;
}

RasterImage synth_natural_image(int h, int w, int channels, std::uint64_t seed) {
  SplitMix rng{mix64(seed)};
  // Shared luminance field so channels stay correlated like a photograph.
  std::vector<double> lum(static_cast<std::size_t>(h) * w, 0.55);

  const int waves = 6;
  for (int k = 0; k < waves; ++k) {
    const double amp = rng.next_range(0.03, 0.16) / (1.0 + k);
    const double fr = rng.next_range(0.5, 5.0);
    const double fc = rng.next_range(0.5, 5.0);
    const double phase = rng.next_range(0.0, 6.283185307179586);
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < w; ++c)
        lum[static_cast<std::size_t>(r) * w + c] +=
            amp * std::cos(6.283185307179586 * (fr * r / h + fc * c / w) + phase);
  }
  const int blobs = 3;
  for (int k = 0; k < blobs; ++k) {
    const double amp = rng.next_range(0.12, 0.3) * (rng.next_unit() < 0.5 ? -1.0 : 1.0);
    const double r0 = rng.next_range(0.0, h - 1.0);
    const double c0 = rng.next_range(0.0, w - 1.0);
    const double sigma = rng.next_range(0.08, 0.3) * std::min(h, w) + 1.0;
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < w; ++c) {
        const double d2 = (r - r0) * (r - r0) + (c - c0) * (c - c0);
        lum[static_cast<std::size_t>(r) * w + c] += amp * std::exp(-d2 / (2.0 * sigma * sigma));
      }
  }

  RasterImage out(h, w, channels);
  std::vector<double> tint(channels, 0.0);
  if (channels == 3)
    for (int ch = 0; ch < 3; ++ch) tint[ch] = rng.next_range(-0.06, 0.06);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c)
      for (int ch = 0; ch < channels; ++ch) {
        const double noise = rng.next_range(-0.02, 0.02);
        out.at(r, c, ch) = std::clamp(
            lum[static_cast<std::size_t>(r) * w + c] + tint[ch] + noise, 0.0, 1.0);
      }
  return out;
}

RasterImage synth_dark_image(int h, int w, int channels, std::uint64_t seed) {
  RasterImage img = synth_natural_image(h, w, channels, mix64(seed ^ 0xD1CEULL));
  double sum = 0.0;
  for (double& v : img.data) {
    v *= v;  // push mass toward black, keep a few bright spots
    sum += v;
  }
  const double mean = sum / static_cast<double>(img.data.size());
  const double scale = mean > 0.0 ? 0.06 / mean : 0.0;
  for (double& v : img.data) v = std::clamp(v * scale, 0.0, 1.0);
  return img;
}

}  // namespace proxylight
