// Copyright 2026 Proxylight Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "proxylight/spectrum.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "proxylight/fft.hpp"

namespace proxylight {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Row-column 2D transform over a row-major grid. Unnormalized in both
// directions; idft2 applies the 1/(H*W) factor itself.
void fft2_inplace(std::vector<std::complex<double>>& grid, int height, int width, bool inverse) {
  auto row_plan = fft_plan(static_cast<std::size_t>(width));
  for (int r = 0; r < height; ++r) {
    std::complex<double>* row = grid.data() + static_cast<std::size_t>(r) * width;
    inverse ? row_plan->inverse(row) : row_plan->forward(row);
  }
  auto col_plan = fft_plan(static_cast<std::size_t>(height));
  thread_local std::vector<std::complex<double>> column;
  column.resize(static_cast<std::size_t>(height));
  for (int c = 0; c < width; ++c) {
    for (int r = 0; r < height; ++r) column[r] = grid[static_cast<std::size_t>(r) * width + c];
    inverse ? col_plan->inverse(column.data()) : col_plan->forward(column.data());
    for (int r = 0; r < height; ++r) grid[static_cast<std::size_t>(r) * width + c] = column[r];
  }
}

double normalized_phase(std::complex<double> z) {
  double ph = std::atan2(z.imag(), z.real());
  if (ph <= -kPi) ph = kPi;
  return ph;
}

}  // namespace

ImageSpectrum dft2(const RasterImage& image) {
  if (!image.valid()) throw std::invalid_argument("dft2: empty image");
  const int h = image.height;
  const int w = image.width;
  const int cy = h / 2;
  const int cx = w / 2;

  ImageSpectrum spec;
  spec.height = h;
  spec.width = w;
  spec.channels.resize(static_cast<std::size_t>(image.channels));

  std::vector<std::complex<double>> grid(static_cast<std::size_t>(h) * w);
  for (int ch = 0; ch < image.channels; ++ch) {
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < w; ++c)
        grid[static_cast<std::size_t>(r) * w + c] = image.at(r, c, ch);
    fft2_inplace(grid, h, w, false);

    ChannelSpectrum& cs = spec.channels[static_cast<std::size_t>(ch)];
    cs.height = h;
    cs.width = w;
    cs.amplitude.resize(static_cast<std::size_t>(h) * w);
    cs.phase.resize(static_cast<std::size_t>(h) * w);
    for (int i = 0; i < h; ++i) {
      const int u = (i - cy + h) % h;
      for (int j = 0; j < w; ++j) {
        const int v = (j - cx + w) % w;
        const std::complex<double> z = grid[static_cast<std::size_t>(u) * w + v];
        cs.amp_at(i, j) = std::abs(z);
        cs.phase_at(i, j) = normalized_phase(z);
      }
    }
  }
  return spec;
}

RealField idft2(const ImageSpectrum& spectrum) {
  if (spectrum.channels.empty() || spectrum.height <= 0 || spectrum.width <= 0)
    throw std::invalid_argument("idft2: empty spectrum");
  const int h = spectrum.height;
  const int w = spectrum.width;
  const int cy = h / 2;
  const int cx = w / 2;
  const int nchan = static_cast<int>(spectrum.channels.size());

  RealField out;
  out.height = h;
  out.width = w;
  out.channels = nchan;
  out.values.resize(static_cast<std::size_t>(h) * w * nchan);

  std::vector<std::complex<double>> grid(static_cast<std::size_t>(h) * w);
  const double scale = 1.0 / (static_cast<double>(h) * static_cast<double>(w));
  for (int ch = 0; ch < nchan; ++ch) {
    const ChannelSpectrum& cs = spectrum.channels[static_cast<std::size_t>(ch)];
    if (cs.height != h || cs.width != w)
      throw std::invalid_argument("idft2: channel dimensions disagree");
    for (int i = 0; i < h; ++i) {
      const int u = (i - cy + h) % h;
      for (int j = 0; j < w; ++j) {
        const int v = (j - cx + w) % w;
        grid[static_cast<std::size_t>(u) * w + v] =
            std::polar(cs.amp_at(i, j), cs.phase_at(i, j));
      }
    }
    fft2_inplace(grid, h, w, true);
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) {
        const std::complex<double> z = grid[static_cast<std::size_t>(r) * w + c] * scale;
        out.values[(static_cast<std::size_t>(r) * w + c) * nchan + ch] = z.real();
        out.imag_residual = std::max(out.imag_residual, std::abs(z.imag()));
      }
    }
  }
  return out;
}

ImageSpectrum naive_dft2(const RasterImage& image) {
  if (!image.valid()) throw std::invalid_argument("naive_dft2: empty image");
  const int h = image.height;
  const int w = image.width;
  if (static_cast<std::size_t>(h) * w > 4096)
    throw std::invalid_argument("naive_dft2: grid too large for the direct transform");

  ImageSpectrum spec;
  spec.height = h;
  spec.width = w;
  spec.channels.resize(static_cast<std::size_t>(image.channels));
  for (int ch = 0; ch < image.channels; ++ch) {
    ChannelSpectrum& cs = spec.channels[static_cast<std::size_t>(ch)];
    cs.height = h;
    cs.width = w;
    cs.amplitude.resize(static_cast<std::size_t>(h) * w);
    cs.phase.resize(static_cast<std::size_t>(h) * w);
    for (int i = 0; i < h; ++i) {
      const int m = i - h / 2;
      for (int j = 0; j < w; ++j) {
        const int n = j - w / 2;
        double re = 0.0;
        double im = 0.0;
        for (int r = 0; r < h; ++r) {
          for (int c = 0; c < w; ++c) {
            const double angle =
                -2.0 * kPi * (static_cast<double>(m) * r / h + static_cast<double>(n) * c / w);
            const double x = image.at(r, c, ch);
            re += x * std::cos(angle);
            im += x * std::sin(angle);
          }
        }
        cs.amp_at(i, j) = std::hypot(re, im);
        double ph = std::atan2(im, re);
        if (ph <= -kPi) ph = kPi;
        cs.phase_at(i, j) = ph;
      }
    }
  }
  return spec;
}

RasterImage amplitude_preview(const ChannelSpectrum& spectrum) {
  RasterImage out;
  out.height = spectrum.height;
  out.width = spectrum.width;
  out.channels = 1;
  out.data.resize(spectrum.amplitude.size());
  double peak = 0.0;
  for (std::size_t i = 0; i < spectrum.amplitude.size(); ++i) {
    out.data[i] = std::log1p(spectrum.amplitude[i]);
    peak = std::max(peak, out.data[i]);
  }
  if (peak > 0.0)
    for (double& v : out.data) v /= peak;
  return out;
}

}  // namespace proxylight
