// Copyright 2026 Proxylight Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "proxylight/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace proxylight {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Centered Blackman factor: 1 at m = 0, 0 at |m| = half_band = lambda_u*N/2.
// full_band is lambda_u*N.
double blackman_factor(double m, double full_band) {
  return 0.42 + 0.5 * std::cos(2.0 * kPi * m / full_band) +
         0.08 * std::cos(4.0 * kPi * m / full_band);
}

// Gray <-> RGB so the exemplar matches the input's channel count.
RasterImage match_channels(const RasterImage& img, int channels) {
  if (img.channels == channels) return img;
  RasterImage out(img.height, img.width, channels);
  if (channels == 3) {
    for (int r = 0; r < img.height; ++r)
      for (int c = 0; c < img.width; ++c)
        for (int ch = 0; ch < 3; ++ch) out.at(r, c, ch) = img.at(r, c, 0);
    return out;
  }
  if (channels == 1) {
    for (int r = 0; r < img.height; ++r)
      for (int c = 0; c < img.width; ++c) {
        double acc = 0.0;
        for (int ch = 0; ch < img.channels; ++ch) acc += img.at(r, c, ch);
        out.at(r, c, 0) = acc / img.channels;
      }
    return out;
  }
  throw std::invalid_argument("match_channels: channel count must be 1 or 3");
}

}  // namespace

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::ours: return "ours";
    case Mode::fda: return "fda";
    case Mode::rect: return "rect";
    case Mode::lowpass: return "lowpass";
  }
  throw std::invalid_argument("to_string: unknown mode");
}

Mode parse_mode(const std::string& name) {
  if (name == "ours") return Mode::ours;
  if (name == "fda") return Mode::fda;
  if (name == "rect") return Mode::rect;
  if (name == "lowpass") return Mode::lowpass;
  throw std::invalid_argument("unknown mode '" + name + "' (expected ours, fda, rect or lowpass)");
}

void TranslationParams::validate() const {
  if (!(lambda_l >= 0.0 && lambda_l < lambda_u && lambda_u < 1.0))
    throw std::invalid_argument("band fractions must satisfy 0 <= lambda_l < lambda_u < 1");
  if (!(gamma >= 1.0)) throw std::invalid_argument("gamma must be >= 1");
}

FusionMask build_mask(int height, int width, const TranslationParams& params) {
  params.validate();
  if (height < 1 || width < 1) throw std::invalid_argument("build_mask: empty grid");

  const bool untapered = params.mode == Mode::fda || params.mode == Mode::rect;
  const bool band_reaches_dc = params.mode == Mode::fda || params.mode == Mode::lowpass;
  const double lambda_l = band_reaches_dc ? 0.0 : params.lambda_l;

  const double row_full = params.lambda_u * height;
  const double col_full = params.lambda_u * width;
  const double row_half = row_full / 2.0;
  const double col_half = col_full / 2.0;
  const double row_half_inner = lambda_l * height / 2.0;
  const double col_half_inner = lambda_l * width / 2.0;

  FusionMask mask;
  mask.height = height;
  mask.width = width;
  mask.alpha.assign(static_cast<std::size_t>(height) * width, 0.0);

  const int cy = height / 2;
  const int cx = width / 2;
  bool any_positive = false;
  for (int i = 0; i < height; ++i) {
    const double m = std::abs(static_cast<double>(i - cy));
    if (m > row_half) continue;
    const double row_factor = untapered ? 1.0 : blackman_factor(m, row_full);
    for (int j = 0; j < width; ++j) {
      const double n = std::abs(static_cast<double>(j - cx));
      if (n > col_half) continue;
      // lambda_l = 0 leaves the inner rectangle empty; otherwise it always
      // holds at least DC.
      if (lambda_l > 0.0 && m <= row_half_inner && n <= col_half_inner) continue;
      const double a = untapered
                           ? 1.0
                           : std::clamp(row_factor * blackman_factor(n, col_full), 0.0, 1.0);
      mask.alpha[static_cast<std::size_t>(i) * width + j] = a;
      if (a > 0.0) any_positive = true;
    }
  }
  mask.degenerate_band = !any_positive;
  return mask;
}

std::vector<double> fuse_amplitude(const std::vector<double>& a_well,
                                   const std::vector<double>& a_low,
                                   const FusionMask& mask) {
  if (a_well.size() != mask.alpha.size() || a_low.size() != mask.alpha.size())
    throw std::invalid_argument("fuse_amplitude: plane sizes disagree");
  std::vector<double> fused(a_well.size());
  for (std::size_t i = 0; i < fused.size(); ++i) {
    const double a = mask.alpha[i];
    fused[i] = a * a_low[i] + (1.0 - a) * a_well[i];
  }
  return fused;
}

ImageSpectrum fuse_spectra(const ImageSpectrum& well, const ImageSpectrum& low,
                           const FusionMask& mask) {
  if (well.channels.size() != low.channels.size())
    throw std::invalid_argument("fuse_spectra: channel counts disagree");
  if (well.height != low.height || well.width != low.width ||
      well.height != mask.height || well.width != mask.width)
    throw std::invalid_argument("fuse_spectra: dimensions disagree");

  ImageSpectrum fused;
  fused.height = well.height;
  fused.width = well.width;
  fused.channels.resize(well.channels.size());
  for (std::size_t ch = 0; ch < well.channels.size(); ++ch) {
    ChannelSpectrum& out = fused.channels[ch];
    out.height = well.height;
    out.width = well.width;
    out.amplitude = fuse_amplitude(well.channels[ch].amplitude, low.channels[ch].amplitude, mask);
    out.phase = well.channels[ch].phase;
  }
  return fused;
}

ImageSpectrum exemplar_spectrum(const RasterImage& low, int height, int width, int channels) {
  if (!low.valid()) throw std::invalid_argument("exemplar_spectrum: exemplar is empty");
  RasterImage exemplar = match_channels(low, channels);
  if (exemplar.height != height || exemplar.width != width)
    exemplar = resize(exemplar, height, width);
  return dft2(exemplar);
}

TranslationResult translate(const RasterImage& well, const RasterImage& low,
                            const TranslationParams& params) {
  params.validate();
  if (!well.valid()) throw std::invalid_argument("translate: well-lit input is empty");
  if (!low.valid()) throw std::invalid_argument("translate: low-light exemplar is empty");
  return translate(well, exemplar_spectrum(low, well.height, well.width, well.channels), params);
}

TranslationResult translate(const RasterImage& well, const ImageSpectrum& low_spectrum,
                            const TranslationParams& params) {
  params.validate();
  if (!well.valid()) throw std::invalid_argument("translate: well-lit input is empty");
  if (low_spectrum.height != well.height || low_spectrum.width != well.width ||
      low_spectrum.channels.size() != static_cast<std::size_t>(well.channels))
    throw std::invalid_argument("translate: exemplar spectrum does not match the input's shape");

  const FusionMask mask = build_mask(well.height, well.width, params);
  const ImageSpectrum fused = fuse_spectra(dft2(well), low_spectrum, mask);
  const RealField field = idft2(fused);

  TranslationResult result;
  result.degenerate_band = mask.degenerate_band;
  RasterImage& img = result.image;
  img.height = well.height;
  img.width = well.width;
  img.channels = well.channels;
  img.data.resize(field.values.size());
  const bool unit_gamma = params.gamma == 1.0;
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    const double v = std::clamp(field.values[i], 0.0, 1.0);
    img.data[i] = unit_gamma ? v : std::pow(v, params.gamma);
  }
  return result;
}

double ringing_energy(const RasterImage& image, const RasterImage& reference_step) {
  if (image.height != reference_step.height || image.width != reference_step.width ||
      image.channels != reference_step.channels)
    throw std::invalid_argument("ringing_energy: dimensions disagree");
  if (!image.valid()) throw std::invalid_argument("ringing_energy: empty image");

  // Each region's [min, max] band is the one value its pixels share in the
  // reference, so the two one-sided penalties add up to (v - ref)^2.
  double total = 0.0;
  for (std::size_t i = 0; i < image.data.size(); ++i) {
    const double d = image.data[i] - reference_step.data[i];
    total += d * d;
  }
  return total / static_cast<double>(image.data.size());
}

}  // namespace proxylight
