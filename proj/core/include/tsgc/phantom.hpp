#pragma once

#include <cstdint>

#include "tsgc/volume_io.hpp"

namespace tsgc {

// splitmix64 stream (64-bit state) with Box-Muller normals. Chosen for
// cross-language reproducibility of fixtures: the uniform draw is
// (next_u64() >> 11) * 2^-53 and each Box-Muller pair is consumed
// cosine-first.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  double next_unit();      // [0, 1)
  double next_gaussian();  // standard normal

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Per-tissue time-intensity curves, one control value per timepoint (HU).
struct TissueCurves {
  std::vector<double> healthy;
  std::vector<double> tumor;
  std::vector<double> vessel;
  std::vector<double> background;
};

struct PhantomGeometry {
  struct Disc {
    double row = 0.0;
    double col = 0.0;
    double radius = 0.0;
  };

  double liver_center_row = 0.0;
  double liver_center_col = 0.0;
  double liver_radius_row = 0.0;  // ellipse semi-axes
  double liver_radius_col = 0.0;
  std::vector<Disc> tumors;
  double vessel_center_col = 0.0;  // vertical strip clipped to the liver
  double vessel_width = 0.0;
  double roi_radius = 2.0;
  double roi_healthy_row = 0.0;
  double roi_healthy_col = 0.0;
};

struct PhantomConfig {
  int height = 64;
  int width = 64;
  int timepoints = 59;
  std::uint64_t seed = 1;
  double noise_sigma = 0.0;  // HU
  TissueCurves curves;
  PhantomGeometry geometry;
};

struct PhantomCase {
  TimeSeriesVolume volume;
  LabelMap truth;
  Mask liver_mask;
  Mask roi_healthy;
  Mask roi_tumor;
  Mask roi_vessel;
};

// Default curves: healthy ramps 60 -> 110 HU, tumor drifts 70 -> 80 HU,
// vessel spikes to 200 HU early then washes out toward 120 HU, background 0.
// Healthy sweeps through the tumor's range mid-series, so single-frame
// intensity is a much weaker cue than the full curve.
TissueCurves default_curves(int timepoints);

// Default geometry scaled to the image: centered liver ellipse, one tumor
// disc, a vertical vessel strip, and small ROI discs inside each region.
PhantomConfig default_phantom(int height = 64, int width = 64, int timepoints = 59,
                              std::uint64_t seed = 1, double noise_sigma = 0.0);

// Rasterizes the ground truth and fills the volume with curve values plus
// seeded Gaussian noise, drawn pixel-by-pixel in [t][row][col] order.
// Throws std::invalid_argument for geometry that does not fit or leaves a
// region or ROI empty.
PhantomCase generate(const PhantomConfig& cfg);

}  // namespace tsgc
