// Copyright 2026 Proxylight Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "proxylight/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace proxylight {

namespace {

void require_matching(const GrayMap& a, const GrayMap& b, const char* op) {
  if (!a.valid() || !b.valid())
    throw std::invalid_argument(std::string(op) + ": empty map");
  if (a.height != b.height || a.width != b.width)
    throw std::invalid_argument(std::string(op) + ": dimensions disagree");
}

}  // namespace

GrayMap::GrayMap(int h, int w, double fill)
    : height(h), width(w), values(static_cast<std::size_t>(h) * w, fill) {}

bool GrayMap::valid() const {
  return height >= 1 && width >= 1 &&
         values.size() == static_cast<std::size_t>(height) * width;
}

double GrayMap::mean() const {
  if (values.empty()) return 0.0;
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc / static_cast<double>(values.size());
}

GrayMap to_gray(const RasterImage& img) {
  if (!img.valid()) throw std::invalid_argument("to_gray: empty image");
  GrayMap out(img.height, img.width);
  for (int r = 0; r < img.height; ++r)
    for (int c = 0; c < img.width; ++c) {
      double acc = 0.0;
      for (int ch = 0; ch < img.channels; ++ch) acc += img.at(r, c, ch);
      out.at(r, c) = acc / img.channels;
    }
  return out;
}

double mae(const GrayMap& pred, const GrayMap& gt) {
  require_matching(pred, gt, "mae");
  double acc = 0.0;
  for (std::size_t i = 0; i < pred.values.size(); ++i)
    acc += std::abs(pred.values[i] - gt.values[i]);
  return acc / static_cast<double>(pred.values.size());
}

FMeasureResult f_measure(const GrayMap& pred, const GrayMap& gt_binary, double beta_sq) {
  require_matching(pred, gt_binary, "f_measure");
  if (!(beta_sq > 0.0)) throw std::invalid_argument("f_measure: beta_sq must be positive");
  for (double v : gt_binary.values)
    if (v != 0.0 && v != 1.0)
      throw std::invalid_argument("f_measure: ground truth must be binary");

  const double threshold = std::clamp(2.0 * pred.mean(), 0.0, 1.0);
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < pred.values.size(); ++i) {
    const double v = pred.values[i];
    const bool positive = threshold > 0.0 ? v >= threshold : v > 0.0;
    const bool truth = gt_binary.values[i] == 1.0;
    if (positive && truth) ++tp;
    else if (positive) ++fp;
    else if (truth) ++fn;
  }

  FMeasureResult result;
  if (tp + fn == 0) {
    result.undefined_recall = true;
    return result;
  }
  const double precision = tp + fp > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
  const double recall = static_cast<double>(tp) / (tp + fn);
  const double denom = beta_sq * precision + recall;
  if (denom > 0.0)
    result.value = (1.0 + beta_sq) * precision * recall / denom;
  return result;
}

DepthMetrics depth_metrics(const GrayMap& pred, const GrayMap& gt) {
  require_matching(pred, gt, "depth_metrics");
  const double t1 = 1.25;
  const double t2 = t1 * t1;
  const double t3 = t2 * t1;

  std::size_t n1 = 0, n2 = 0, n3 = 0;
  double rel_acc = 0.0;
  double sq_acc = 0.0;
  for (std::size_t i = 0; i < pred.values.size(); ++i) {
    const double p = pred.values[i];
    const double g = gt.values[i];
    if (!(p > 0.0) || !(g > 0.0))
      throw std::invalid_argument("depth_metrics: depth values must be positive");
    const double ratio = std::max(p / g, g / p);
    if (ratio < t1) ++n1;
    if (ratio < t2) ++n2;
    if (ratio < t3) ++n3;
    rel_acc += std::abs(p - g) / g;
    sq_acc += (p - g) * (p - g);
  }

  const double count = static_cast<double>(pred.values.size());
  DepthMetrics out;
  out.delta1 = n1 / count;
  out.delta2 = n2 / count;
  out.delta3 = n3 / count;
  out.rel = rel_acc / count;
  out.rmse = std::sqrt(sq_acc / count);
  return out;
}

}  // namespace proxylight
