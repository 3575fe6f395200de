#include "tsgc/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tsgc {

std::uint64_t SplitMix64::next_u64() {
  state_ += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double SplitMix64::next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double SplitMix64::next_gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 1.0 - next_unit();  // (0, 1], keeps the log finite
  double u2 = next_unit();
  double radius = std::sqrt(-2.0 * std::log(u1));
  double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

namespace {

std::vector<double> sample_piecewise(const std::vector<std::pair<double, double>>& knots,
                                     int timepoints) {
  std::vector<double> curve(static_cast<std::size_t>(timepoints));
  for (int i = 0; i < timepoints; ++i) {
    double s = timepoints == 1 ? 0.0 : static_cast<double>(i) / (timepoints - 1);
    std::size_t k = 1;
    while (k + 1 < knots.size() && s > knots[k].first) ++k;
    double s0 = knots[k - 1].first, s1 = knots[k].first;
    double v0 = knots[k - 1].second, v1 = knots[k].second;
    double f = s1 > s0 ? (s - s0) / (s1 - s0) : 0.0;
    curve[static_cast<std::size_t>(i)] = v0 + f * (v1 - v0);
  }
  return curve;
}

bool in_ellipse(double r, double c, const PhantomGeometry& g) {
  double dr = (r - g.liver_center_row) / g.liver_radius_row;
  double dc = (c - g.liver_center_col) / g.liver_radius_col;
  return dr * dr + dc * dc <= 1.0;
}

bool in_disc(double r, double c, const PhantomGeometry::Disc& d) {
  double dr = r - d.row, dc = c - d.col;
  return dr * dr + dc * dc <= d.radius * d.radius;
}

Mask rasterize_disc(int height, int width, const PhantomGeometry::Disc& d) {
  Mask mask = Mask::zeros(height, width);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      if (in_disc(r, c, d)) mask.set(r, c, true);
    }
  }
  return mask;
}

void check_roi_subset(const Mask& roi, const LabelMap& truth, Label expected, const char* name) {
  std::size_t roi_count = 0, region_count = 0;
  for (std::size_t i = 0; i < roi.bits.size(); ++i) {
    if (truth.labels[i] == expected) ++region_count;
    if (!roi.bits[i]) continue;
    ++roi_count;
    if (truth.labels[i] != expected) {
      throw std::invalid_argument(std::string(name) + " ROI leaves its tissue region");
    }
  }
  if (roi_count == 0) throw std::invalid_argument(std::string(name) + " ROI is empty");
  if (roi_count >= region_count) {
    throw std::invalid_argument(std::string(name) + " ROI must be a strict subset of its region");
  }
}

}  // namespace

TissueCurves default_curves(int timepoints) {
  TissueCurves curves;
  // Healthy parenchyma enhances quickly and plateaus; the tumor stays nearly
  // flat, so mid-series frames overlap the tumor's whole intensity range.
  // The vessel spikes early, washes out to just above the tumor level and
  // re-rises late, which keeps it closer (in curve space) to the tumor than
  // to healthy tissue.
  curves.healthy =
      sample_piecewise({{0.0, 60.0}, {0.12, 92.0}, {0.30, 106.0}, {1.0, 110.0}}, timepoints);
  curves.tumor = sample_piecewise({{0.0, 70.0}, {1.0, 80.0}}, timepoints);
  curves.vessel = sample_piecewise(
      {{0.0, 80.0}, {0.05, 200.0}, {0.16, 82.0}, {0.85, 84.0}, {1.0, 120.0}}, timepoints);
  curves.background.assign(static_cast<std::size_t>(timepoints), 0.0);
  return curves;
}

PhantomConfig default_phantom(int height, int width, int timepoints, std::uint64_t seed,
                              double noise_sigma) {
  PhantomConfig cfg;
  cfg.height = height;
  cfg.width = width;
  cfg.timepoints = timepoints;
  cfg.seed = seed;
  cfg.noise_sigma = noise_sigma;
  cfg.curves = default_curves(timepoints);

  double side = static_cast<double>(std::min(height, width));
  PhantomGeometry& g = cfg.geometry;
  g.liver_center_row = 0.5 * height;
  g.liver_center_col = 0.5 * width;
  g.liver_radius_row = 0.38 * height;
  g.liver_radius_col = 0.42 * width;
  g.tumors = {{0.40 * height, 0.62 * width, 0.11 * side}};
  g.roi_radius = std::max(1.5, 0.03 * side);
  g.vessel_center_col = 0.34 * width;
  // wide enough that the vessel ROI disc stays strictly inside the strip
  g.vessel_width = std::max(2.0 * g.roi_radius + 1.5, 0.07 * width);
  g.roi_healthy_row = 0.75 * height;
  g.roi_healthy_col = 0.50 * width;
  return cfg;
}

PhantomCase generate(const PhantomConfig& cfg) {
  if (cfg.height < 1 || cfg.width < 1 || cfg.timepoints < 1) {
    throw std::invalid_argument("phantom dimensions must all be >= 1");
  }
  const std::size_t t_count = static_cast<std::size_t>(cfg.timepoints);
  if (cfg.curves.healthy.size() != t_count || cfg.curves.tumor.size() != t_count ||
      cfg.curves.vessel.size() != t_count || cfg.curves.background.size() != t_count) {
    throw std::invalid_argument("tissue curves must have one value per timepoint");
  }
  if (!(cfg.noise_sigma >= 0.0)) throw std::invalid_argument("noise sigma must be nonnegative");

  const PhantomGeometry& g = cfg.geometry;
  if (!(g.liver_radius_row > 0.0) || !(g.liver_radius_col > 0.0)) {
    throw std::invalid_argument("liver ellipse radii must be positive");
  }
  if (g.liver_center_row - g.liver_radius_row < 0.0 ||
      g.liver_center_row + g.liver_radius_row > cfg.height - 1 ||
      g.liver_center_col - g.liver_radius_col < 0.0 ||
      g.liver_center_col + g.liver_radius_col > cfg.width - 1) {
    throw std::invalid_argument("liver ellipse does not fit inside the image");
  }
  if (g.tumors.empty()) throw std::invalid_argument("phantom needs at least one tumor disc");

  PhantomCase out;
  out.truth = LabelMap::background(cfg.height, cfg.width);
  out.liver_mask = Mask::zeros(cfg.height, cfg.width);

  for (int r = 0; r < cfg.height; ++r) {
    for (int c = 0; c < cfg.width; ++c) {
      bool tumor = false;
      for (const auto& disc : g.tumors) {
        if (in_disc(r, c, disc)) {
          tumor = true;
          break;
        }
      }
      if (!in_ellipse(r, c, g)) {
        if (tumor) throw std::invalid_argument("tumor disc extends outside the liver");
        continue;
      }
      out.liver_mask.set(r, c, true);
      if (tumor) {
        out.truth.set(r, c, Label::Tumor);
      } else if (std::abs(c - g.vessel_center_col) <= g.vessel_width / 2.0) {
        out.truth.set(r, c, Label::Vessel);
      } else {
        out.truth.set(r, c, Label::Healthy);
      }
    }
  }

  std::size_t healthy_count = 0, tumor_count = 0, vessel_count = 0;
  for (Label l : out.truth.labels) {
    healthy_count += l == Label::Healthy;
    tumor_count += l == Label::Tumor;
    vessel_count += l == Label::Vessel;
  }
  if (healthy_count == 0 || tumor_count == 0 || vessel_count == 0) {
    throw std::invalid_argument("phantom geometry leaves a tissue region empty");
  }

  out.roi_healthy = rasterize_disc(cfg.height, cfg.width,
                                   {g.roi_healthy_row, g.roi_healthy_col, g.roi_radius});
  out.roi_tumor = rasterize_disc(cfg.height, cfg.width,
                                 {g.tumors[0].row, g.tumors[0].col, g.roi_radius});
  out.roi_vessel = rasterize_disc(cfg.height, cfg.width,
                                  {g.liver_center_row, g.vessel_center_col, g.roi_radius});
  check_roi_subset(out.roi_healthy, out.truth, Label::Healthy, "healthy");
  check_roi_subset(out.roi_tumor, out.truth, Label::Tumor, "tumor");
  check_roi_subset(out.roi_vessel, out.truth, Label::Vessel, "vessel");

  const std::vector<double>* curve_of[4] = {&cfg.curves.background, &cfg.curves.healthy,
                                            &cfg.curves.tumor, &cfg.curves.vessel};
  out.volume.height = cfg.height;
  out.volume.width = cfg.width;
  out.volume.timepoints = cfg.timepoints;
  out.volume.data.resize(out.volume.pixel_count() * t_count);

  SplitMix64 rng(cfg.seed);
  std::size_t idx = 0;
  for (int t = 0; t < cfg.timepoints; ++t) {
    for (std::size_t p = 0; p < out.volume.pixel_count(); ++p) {
      double base = (*curve_of[static_cast<int>(out.truth.labels[p])])[static_cast<std::size_t>(t)];
      double value = base;
      if (cfg.noise_sigma > 0.0) value += cfg.noise_sigma * rng.next_gaussian();
      out.volume.data[idx++] = static_cast<float>(value);
    }
  }
  return out;
}

}  // namespace tsgc
