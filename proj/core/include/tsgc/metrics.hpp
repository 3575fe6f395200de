#pragma once

#include "tsgc/volume_io.hpp"

namespace tsgc {

// Overlap measures between a segmented region S and ground truth T. Undefined
// cases throw std::domain_error rather than returning sentinels.

// (1 - |S n T| / |S u T|) * 100; 0 is a perfect segmentation.
double voe_percent(const Mask& segmented, const Mask& truth);

// (|S| / |T| - 1) * 100; positive = over-segmentation.
double rvd_percent(const Mask& segmented, const Mask& truth);

// 2 |S n T| / (|S| + |T|); 1 is a perfect segmentation.
double dsc(const Mask& segmented, const Mask& truth);

// Region extraction for evaluation: tumor pixels, optionally with vessels.
Mask label_region(const LabelMap& labels, bool include_vessel = false);

}  // namespace tsgc
