#include "tsgc/metrics.hpp"

#include <stdexcept>

namespace tsgc {

namespace {

struct OverlapCounts {
  std::size_t s = 0;
  std::size_t t = 0;
  std::size_t both = 0;
};

OverlapCounts count_overlap(const Mask& segmented, const Mask& truth) {
  if (segmented.height != truth.height || segmented.width != truth.width) {
    throw std::invalid_argument("segmented and truth masks must have equal dimensions");
  }
  OverlapCounts counts;
  for (std::size_t i = 0; i < segmented.bits.size(); ++i) {
    bool in_s = segmented.bits[i] != 0;
    bool in_t = truth.bits[i] != 0;
    counts.s += in_s;
    counts.t += in_t;
    counts.both += in_s && in_t;
  }
  return counts;
}

}  // namespace

double voe_percent(const Mask& segmented, const Mask& truth) {
  OverlapCounts c = count_overlap(segmented, truth);
  std::size_t uni = c.s + c.t - c.both;
  if (uni == 0) throw std::domain_error("VOE is undefined for two empty regions");
  return (1.0 - static_cast<double>(c.both) / static_cast<double>(uni)) * 100.0;
}

double rvd_percent(const Mask& segmented, const Mask& truth) {
  OverlapCounts c = count_overlap(segmented, truth);
  if (c.t == 0) throw std::domain_error("RVD is undefined for an empty ground truth");
  return (static_cast<double>(c.s) / static_cast<double>(c.t) - 1.0) * 100.0;
}

double dsc(const Mask& segmented, const Mask& truth) {
  OverlapCounts c = count_overlap(segmented, truth);
  if (c.s + c.t == 0) throw std::domain_error("DSC is undefined for two empty regions");
  return 2.0 * static_cast<double>(c.both) / static_cast<double>(c.s + c.t);
}

Mask label_region(const LabelMap& labels, bool include_vessel) {
  Mask region = Mask::zeros(labels.height, labels.width);
  for (std::size_t i = 0; i < labels.labels.size(); ++i) {
    Label l = labels.labels[i];
    region.bits[i] = (l == Label::Tumor || (include_vessel && l == Label::Vessel)) ? 1 : 0;
  }
  return region;
}

}  // namespace tsgc
