// Copyright 2026 Proxylight Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <vector>

#include "proxylight/image.hpp"

namespace proxylight {

// Amplitude/phase split of one channel's 2D DFT. Both planes are stored
// centered: the DC bin sits at (height/2, width/2), so index (i, j) holds
// the frequency (i - height/2, j - width/2).
struct ChannelSpectrum {
  int height = 0;
  int width = 0;
  std::vector<double> amplitude;
  std::vector<double> phase;  // in (-pi, pi]

  double& amp_at(int r, int c) { return amplitude[static_cast<std::size_t>(r) * width + c]; }
  double amp_at(int r, int c) const { return amplitude[static_cast<std::size_t>(r) * width + c]; }
  double& phase_at(int r, int c) { return phase[static_cast<std::size_t>(r) * width + c]; }
  double phase_at(int r, int c) const { return phase[static_cast<std::size_t>(r) * width + c]; }
};

struct ImageSpectrum {
  int height = 0;
  int width = 0;
  std::vector<ChannelSpectrum> channels;
};

// Real-valued reconstruction produced by idft2. imag_residual records the
// largest imaginary magnitude discarded when taking the real part; for a
// spectrum with conjugate symmetry it stays at rounding-error level.
struct RealField {
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<double> values;
  double imag_residual = 0.0;

  double at(int r, int c, int ch) const {
    return values[(static_cast<std::size_t>(r) * width + c) * channels + ch];
  }
};

// Forward 2D DFT (unnormalized) of every channel, split into amplitude and
// phase on the centered frequency plane.
ImageSpectrum dft2(const RasterImage& image);

// Inverse 2D DFT with 1/(height*width) normalization.
RealField idft2(const ImageSpectrum& spectrum);

// Direct O((H*W)^2) transform used as an independent check of dft2. Shares
// no code with the fast path and refuses grids larger than 4096 samples.
ImageSpectrum naive_dft2(const RasterImage& image);

// Log-scaled single-channel rendering of an amplitude plane, normalized to
// [0, 1]. Debug aid for inspecting spectra.
RasterImage amplitude_preview(const ChannelSpectrum& spectrum);

}  // namespace proxylight
