// Copyright 2026 Proxylight Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cmath>
#include <complex>

#include "doctest.h"
#include "proxylight/spectrum.hpp"
#include "testutil.hpp"

using namespace proxylight;

namespace {

std::complex<double> bin(const ChannelSpectrum& cs, int r, int c) {
  return std::polar(cs.amp_at(r, c), cs.phase_at(r, c));
}

// Largest complex distance between matching bins of two spectra.
double max_bin_distance(const ImageSpectrum& a, const ImageSpectrum& b) {
  REQUIRE(a.channels.size() == b.channels.size());
  double worst = 0.0;
  for (std::size_t ch = 0; ch < a.channels.size(); ++ch)
    for (int r = 0; r < a.height; ++r)
      for (int c = 0; c < a.width; ++c)
        worst = std::max(worst,
                         std::abs(bin(a.channels[ch], r, c) - bin(b.channels[ch], r, c)));
  return worst;
}

double max_roundtrip_error(const RasterImage& img) {
  const RealField field = idft2(dft2(img));
  REQUIRE(field.values.size() == img.data.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < img.data.size(); ++i)
    worst = std::max(worst, std::abs(field.values[i] - img.data[i]));
  return worst;
}

}  // namespace

TEST_CASE("constant image concentrates in the DC bin") {
  for (auto [h, w] : {std::pair{8, 8}, std::pair{7, 5}}) {
    RasterImage img(h, w, 1, 0.37);
    const ImageSpectrum spec = dft2(img);
    const ChannelSpectrum& cs = spec.channels[0];
    const int cy = h / 2, cx = w / 2;
    CHECK(cs.amp_at(cy, cx) == doctest::Approx(0.37 * h * w).epsilon(1e-12));
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < w; ++c)
        if (r != cy || c != cx) CHECK(cs.amp_at(r, c) <= 1e-9);
  }
}

TEST_CASE("zero image has a zero spectrum") {
  RasterImage img(6, 9, 3, 0.0);
  const ImageSpectrum spec = dft2(img);
  for (const auto& cs : spec.channels)
    for (double a : cs.amplitude) CHECK(a == 0.0);
}

TEST_CASE("impulse spreads flat across all bins") {
  RasterImage img(8, 8, 1, 0.0);
  img.at(0, 0, 0) = 1.0;
  const ImageSpectrum spec = naive_dft2(img);
  for (double a : spec.channels[0].amplitude) CHECK(a == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(max_bin_distance(dft2(img), spec) <= 1e-8);
}

TEST_CASE("fast transform matches the direct sum") {
  for (auto [h, w] : {std::pair{16, 16}, std::pair{7, 5}, std::pair{15, 16}, std::pair{12, 12}}) {
    const RasterImage img = testutil::random_image(h, w, 3, 1000 + h * 31 + w);
    CHECK(max_bin_distance(dft2(img), naive_dft2(img)) <= 1e-8);
  }
}

TEST_CASE("one-pixel images transform exactly") {
  RasterImage img(1, 1, 1, 0.42);
  const ImageSpectrum fast = dft2(img);
  const ImageSpectrum direct = naive_dft2(img);
  CHECK(fast.channels[0].amp_at(0, 0) == doctest::Approx(0.42));
  CHECK(max_bin_distance(fast, direct) <= 1e-12);
  CHECK(max_roundtrip_error(img) <= 1e-12);
}

TEST_CASE("round trip reproduces the image") {
  for (auto [h, w] : {std::pair{8, 8}, std::pair{7, 5}, std::pair{15, 16}, std::pair{32, 24}}) {
    const RasterImage img = testutil::random_image(h, w, 3, 7 * h + w);
    CHECK(max_roundtrip_error(img) <= 1e-9);
    const RealField field = idft2(dft2(img));
    CHECK(field.imag_residual <= 1e-9);
  }
}

TEST_CASE("large-prime dimensions go through the chirp path") {
  const RasterImage img = testutil::random_image(37, 41, 1, 5);
  CHECK(max_roundtrip_error(img) <= 1e-9);

  // A 1x37 row is small enough for the direct oracle.
  const RasterImage row = testutil::random_image(1, 37, 1, 6);
  CHECK(max_bin_distance(dft2(row), naive_dft2(row)) <= 1e-8);
}

TEST_CASE("real input gives a center-symmetric amplitude") {
  const RasterImage img = testutil::random_image(10, 14, 1, 11);
  const ImageSpectrum spec = dft2(img);
  const ChannelSpectrum& cs = spec.channels[0];
  const int cy = 5, cx = 7;
  for (int m = -4; m <= 4; ++m)
    for (int n = -6; n <= 6; ++n)
      CHECK(cs.amp_at(cy + m, cx + n) ==
            doctest::Approx(cs.amp_at(cy - m, cx - n)).epsilon(1e-9));
}

TEST_CASE("parseval holds on random grids") {
  for (int trial = 0; trial < 5; ++trial) {
    const RasterImage img = testutil::random_image(12, 12, 1, 100 + trial);
    double pixel_energy = 0.0;
    for (double v : img.data) pixel_energy += v * v;
    const ImageSpectrum spec = dft2(img);
    double bin_energy = 0.0;
    for (double a : spec.channels[0].amplitude) bin_energy += a * a;
    bin_energy /= 144.0;
    CHECK(std::abs(bin_energy - pixel_energy) <= 1e-8 * pixel_energy);
  }
}

TEST_CASE("direct oracle refuses big grids") {
  const RasterImage img(65, 64, 1, 0.1);
  CHECK_THROWS_AS(naive_dft2(img), std::invalid_argument);
}

TEST_CASE("phase stays in the half-open interval") {
  const RasterImage img = testutil::random_image(9, 8, 1, 4);
  const ImageSpectrum spec = dft2(img);
  constexpr double pi = 3.14159265358979323846;
  for (double p : spec.channels[0].phase) {
    CHECK(p > -pi);
    CHECK(p <= pi);
  }
}

TEST_CASE("amplitude preview is a unit-range plane") {
  const RasterImage img = testutil::random_image(16, 16, 1, 12);
  const RasterImage preview = amplitude_preview(dft2(img).channels[0]);
  CHECK(preview.height == 16);
  CHECK(preview.channels == 1);
  double peak = 0.0;
  for (double v : preview.data) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    peak = std::max(peak, v);
  }
  CHECK(peak == doctest::Approx(1.0));
}

TEST_CASE("empty inputs are rejected") {
  RasterImage empty;
  CHECK_THROWS_AS(dft2(empty), std::invalid_argument);
  ImageSpectrum none;
  CHECK_THROWS_AS(idft2(none), std::invalid_argument);
}
