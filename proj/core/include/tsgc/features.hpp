#pragma once

#include "tsgc/volume_io.hpp"

namespace tsgc {

// H x W grid of D-dimensional per-pixel feature vectors, stored [row][col][d].
struct FeatureField {
  int height = 0;
  int width = 0;
  int dim = 0;
  std::vector<float> values;

  std::size_t offset(int r, int c) const {
    return (static_cast<std::size_t>(r) * width + c) * static_cast<std::size_t>(dim);
  }
  const float* vec(int r, int c) const { return values.data() + offset(r, c); }
  float* vec(int r, int c) { return values.data() + offset(r, c); }
};

struct FeatureMode {
  enum class Kind { TimeSeries, Multiscale, MedianScalar };
  Kind kind = Kind::TimeSeries;
  int max_scale = 10;  // Multiscale only

  static FeatureMode time_series() { return {Kind::TimeSeries, 10}; }
  static FeatureMode multiscale(int max_scale = 10) { return {Kind::Multiscale, max_scale}; }
  static FeatureMode median_scalar() { return {Kind::MedianScalar, 10}; }
};

// Per-pixel vector of that pixel's intensity at every timepoint; a pure
// gather, no smoothing.
FeatureField time_series_features(const TimeSeriesVolume& vol);

// Box-average descriptor of the last timepoint. Entry k (1-based) is the mean
// of the k x k window anchored with its top-left corner at
// (r - floor((k-1)/2), c - floor((k-1)/2)), averaged over in-bounds pixels only.
FeatureField multiscale_features(const TimeSeriesVolume& vol, int max_scale = 10);

// Scalar feature: 3x3 median of the last timepoint with replicate padding.
FeatureField median_scalar_features(const TimeSeriesVolume& vol);

// Box-smooths every timepoint with a kernel_size^2 kernel (replicate padding).
// kernel_size must be odd; 1 is the identity. Throws std::invalid_argument.
TimeSeriesVolume smooth_volume(const TimeSeriesVolume& vol, int kernel_size);

FeatureField compute_features(const TimeSeriesVolume& vol, const FeatureMode& mode);

}  // namespace tsgc
