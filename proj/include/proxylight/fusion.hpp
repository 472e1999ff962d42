// Copyright 2026 Proxylight Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <string>
#include <vector>

#include "proxylight/image.hpp"
#include "proxylight/spectrum.hpp"

namespace proxylight {

// How amplitudes are blended inside the fusion band:
//   ours    - Blackman-tapered blend over the band between lambda_l and lambda_u
//   fda     - hard low-frequency amplitude swap (alpha = 1 on the whole block
//             below lambda_u; lambda_l ignored)
//   rect    - untapered blend (alpha = 1 on the band, keeps lambda_l)
//   lowpass - Blackman taper with lambda_l forced to 0 (band reaches DC)
enum class Mode { ours, fda, rect, lowpass };

const char* to_string(Mode mode);
Mode parse_mode(const std::string& name);

struct TranslationParams {
  double lambda_l = 0.01;
  double lambda_u = 0.10;
  double gamma = 3.5;
  Mode mode = Mode::ours;

  // Enforces 0 <= lambda_l < lambda_u < 1 and gamma >= 1.
  void validate() const;
};

// Per-bin blend weights on the centered frequency plane. degenerate_band is
// set when no bin has positive weight, in which case fusion is a no-op and
// the translation reduces to pure gamma darkening.
struct FusionMask {
  int height = 0;
  int width = 0;
  std::vector<double> alpha;
  bool degenerate_band = false;

  double at(int r, int c) const { return alpha[static_cast<std::size_t>(r) * width + c]; }
};

// Weights are nonzero only inside the rectangle |m| <= lambda_u*H/2,
// |n| <= lambda_u*W/2 and outside the inner rectangle defined the same way
// by lambda_l (empty when lambda_l = 0, so DC is then part of the band).
// Inside the band the weight is a separable Blackman taper that peaks at DC
// and falls to zero at the outer edge, or 1 for the untapered modes.
FusionMask build_mask(int height, int width, const TranslationParams& params);

// Pointwise alpha*low + (1-alpha)*well. Bins with alpha 0 or 1 copy the
// corresponding input exactly.
std::vector<double> fuse_amplitude(const std::vector<double>& a_well,
                                   const std::vector<double>& a_low,
                                   const FusionMask& mask);

// Fused amplitudes with the well-lit phase planes carried over untouched.
ImageSpectrum fuse_spectra(const ImageSpectrum& well, const ImageSpectrum& low,
                           const FusionMask& mask);

struct TranslationResult {
  RasterImage image;
  bool degenerate_band = false;
};

// Full pipeline: adapt the exemplar to the input's channel count and size,
// fuse amplitude spectra through the mask, reconstruct with the well-lit
// phase, clamp to [0,1], then darken by raising to gamma.
TranslationResult translate(const RasterImage& well, const RasterImage& low,
                            const TranslationParams& params);

// The exemplar half of translate(), split out so batch runs can compute it
// once per (exemplar, target shape): channel adaptation, resize, transform.
ImageSpectrum exemplar_spectrum(const RasterImage& low, int height, int width, int channels);

// translate() against a precomputed exemplar spectrum, which must match the
// input's shape exactly. Bit-identical to the two-raster overload.
TranslationResult translate(const RasterImage& well, const ImageSpectrum& low_spectrum,
                            const TranslationParams& params);

// Mean squared excursion of `image` outside the per-region value bands of a
// piecewise-constant reference. Regions group pixels sharing one reference
// value, so each band collapses to that value and overshoot plus undershoot
// sum to the squared deviation. Used to compare ringing across window modes.
double ringing_energy(const RasterImage& image, const RasterImage& reference_step);

}  // namespace proxylight
