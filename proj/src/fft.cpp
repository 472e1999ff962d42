// Copyright 2026 Proxylight Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "proxylight/fft.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace proxylight {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Largest prime handled by the direct mixed-radix butterfly.
constexpr std::size_t kMaxDirectRadix = 31;

std::vector<std::size_t> factorize(std::size_t n) {
  std::vector<std::size_t> factors;
  for (std::size_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      factors.push_back(p);
      n /= p;
    }
  }
  if (n > 1) factors.push_back(n);
  return factors;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

Fft1d::Fft1d(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("Fft1d: length must be positive");
  if (n == 1) return;

  factors_ = factorize(n);
  use_bluestein_ = factors_.back() > kMaxDirectRadix;
  if (use_bluestein_) {
    padded_ = next_pow2(2 * n - 1);
    padded_plan_ = std::make_shared<const Fft1d>(padded_);
    chirp_.resize(n);
    const std::size_t two_n = 2 * n;
    for (std::size_t k = 0; k < n; ++k) {
      // exp(-i*pi*k^2/n); k^2 reduced mod 2n to keep the argument small.
      const double angle = -kPi * static_cast<double>((k * k) % two_n) / static_cast<double>(n);
      chirp_[k] = std::polar(1.0, angle);
    }
    std::vector<std::complex<double>> wrapped(padded_, std::complex<double>(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
      const std::complex<double> b = std::conj(chirp_[k]);
      wrapped[k] = b;
      if (k > 0) wrapped[padded_ - k] = b;
    }
    padded_plan_->forward(wrapped.data());
    chirp_kernel_ = std::move(wrapped);
    return;
  }

  twiddles_.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    twiddles_[k] = std::polar(1.0, -2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
}

void Fft1d::forward(std::complex<double>* data) const { transform(data); }

void Fft1d::inverse(std::complex<double>* data) const {
  for (std::size_t i = 0; i < n_; ++i) data[i] = std::conj(data[i]);
  transform(data);
  for (std::size_t i = 0; i < n_; ++i) data[i] = std::conj(data[i]);
}

void Fft1d::transform(std::complex<double>* data) const {
  if (n_ <= 1) return;
  if (use_bluestein_) {
    bluestein(data);
    return;
  }
  thread_local std::vector<std::complex<double>> scratch;
  scratch.assign(data, data + n_);
  recurse(scratch.data(), data, n_, 1, 1, factors_.data());
}

void Fft1d::recurse(const std::complex<double>* in, std::complex<double>* out,
                    std::size_t n, std::size_t in_stride, std::size_t tw_step,
                    const std::size_t* factors) const {
  if (n == 1) {
    out[0] = in[0];
    return;
  }
  const std::size_t p = *factors;
  const std::size_t m = n / p;

  if (m == 1) {
    // n is prime: direct p-point DFT.
    std::array<std::complex<double>, kMaxDirectRadix> t;
    for (std::size_t k = 0; k < p; ++k) t[k] = in[k * in_stride];
    for (std::size_t j = 0; j < p; ++j) {
      std::complex<double> acc = t[0];
      for (std::size_t k = 1; k < p; ++k)
        acc += t[k] * twiddles_[((j * k) % p) * tw_step];
      out[j] = acc;
    }
    return;
  }

  for (std::size_t i = 0; i < p; ++i)
    recurse(in + i * in_stride, out + i * m, m, in_stride * p, tw_step * p, factors + 1);

  if (p == 2) {
    for (std::size_t k = 0; k < m; ++k) {
      const std::complex<double> t0 = out[k];
      const std::complex<double> t1 = out[m + k] * twiddles_[(k % n) * tw_step];
      out[k] = t0 + t1;
      out[m + k] = t0 - t1;
    }
    return;
  }

  std::array<std::complex<double>, kMaxDirectRadix> t;
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t j = 0; j < p; ++j)
      t[j] = out[j * m + k] * twiddles_[((j * k) % n) * tw_step];
    for (std::size_t q = 0; q < p; ++q) {
      std::complex<double> acc = t[0];
      for (std::size_t j = 1; j < p; ++j)
        acc += t[j] * twiddles_[(((j * q) % p) * m) * tw_step];
      out[q * m + k] = acc;
    }
  }
}

void Fft1d::bluestein(std::complex<double>* data) const {
  thread_local std::vector<std::complex<double>> padded;
  padded.assign(padded_, std::complex<double>(0.0, 0.0));
  for (std::size_t k = 0; k < n_; ++k) padded[k] = data[k] * chirp_[k];

  padded_plan_->forward(padded.data());
  for (std::size_t i = 0; i < padded_; ++i) padded[i] *= chirp_kernel_[i];
  padded_plan_->inverse(padded.data());

  const double scale = 1.0 / static_cast<double>(padded_);
  for (std::size_t j = 0; j < n_; ++j) data[j] = padded[j] * chirp_[j] * scale;
}

std::shared_ptr<const Fft1d> fft_plan(std::size_t n) {
  static std::mutex mutex;
  static std::unordered_map<std::size_t, std::shared_ptr<const Fft1d>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto plan = std::make_shared<const Fft1d>(n);
  cache.emplace(n, plan);
  return plan;
}

}  // namespace proxylight
