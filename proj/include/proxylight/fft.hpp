// Copyright 2026 Proxylight Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace proxylight {

// One-dimensional complex transform plan for a fixed length. Mixed-radix
// Cooley-Tukey for smooth lengths, Bluestein chirp-z when a prime factor
// exceeds the direct-radix cap, so every length runs in O(n log n).
// Forward and inverse are both unnormalized; callers apply 1/n where their
// convention needs it. Plans are immutable after construction and safe to
// share across threads.
class Fft1d {
 public:
  explicit Fft1d(std::size_t n);

  std::size_t size() const { return n_; }
  void forward(std::complex<double>* data) const;
  void inverse(std::complex<double>* data) const;

 private:
  void transform(std::complex<double>* data) const;
  void recurse(const std::complex<double>* in, std::complex<double>* out,
               std::size_t n, std::size_t in_stride, std::size_t tw_step,
               const std::size_t* factors) const;
  void bluestein(std::complex<double>* data) const;

  std::size_t n_ = 0;
  std::vector<std::size_t> factors_;              // prime factors, ascending
  std::vector<std::complex<double>> twiddles_;    // exp(-2*pi*i*k/n), k < n

  // Bluestein state, populated only when factors exceed the direct cap.
  bool use_bluestein_ = false;
  std::size_t padded_ = 0;                        // power of two >= 2n-1
  std::shared_ptr<const Fft1d> padded_plan_;
  std::vector<std::complex<double>> chirp_;       // exp(-i*pi*k^2/n)
  std::vector<std::complex<double>> chirp_kernel_;  // forward FFT of wrapped conj chirp
};

// Process-wide plan cache; returned plans are shared and immutable.
std::shared_ptr<const Fft1d> fft_plan(std::size_t n);

}  // namespace proxylight
