// Copyright 2026 Proxylight Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <vector>

#include "proxylight/image.hpp"

namespace proxylight {

// Single-plane map. Saliency maps live in [0,1]; depth maps may carry any
// positive reals, so the range is validated by the producer, not here.
struct GrayMap {
  int height = 0;
  int width = 0;
  std::vector<double> values;

  GrayMap() = default;
  GrayMap(int h, int w, double fill = 0.0);

  double at(int r, int c) const { return values[static_cast<std::size_t>(r) * width + c]; }
  double& at(int r, int c) { return values[static_cast<std::size_t>(r) * width + c]; }
  bool valid() const;
  double mean() const;
};

// Channel average of a raster.
GrayMap to_gray(const RasterImage& img);

// Mean absolute difference.
double mae(const GrayMap& pred, const GrayMap& gt);

struct FMeasureResult {
  double value = 0.0;
  // True when gt has no positives, which leaves recall undefined; value is 0.
  bool undefined_recall = false;
};

// Weighted F-score of pred binarized at twice its mean (threshold clipped to
// [0,1]; at threshold 0 only strictly positive predictions count, so an
// all-zero prediction scores 0). gt must be strictly 0/1.
FMeasureResult f_measure(const GrayMap& pred, const GrayMap& gt_binary, double beta_sq = 0.3);

struct DepthMetrics {
  double delta1 = 0.0;  // fraction with max(pred/gt, gt/pred) < 1.25
  double delta2 = 0.0;  // ... < 1.25^2
  double delta3 = 0.0;  // ... < 1.25^3
  double rel = 0.0;     // mean |pred-gt| / gt
  double rmse = 0.0;
};

// Depth accuracy under strict ratio thresholds. Both maps must be > 0.
DepthMetrics depth_metrics(const GrayMap& pred, const GrayMap& gt);

}  // namespace proxylight
