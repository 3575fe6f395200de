#include "tsgc/features.hpp"

#include <algorithm>
#include <stdexcept>

#include "tsgc/parallel.hpp"

namespace tsgc {

namespace {

int clamp_index(int i, int n) { return std::clamp(i, 0, n - 1); }

// Last-timepoint image as a raw pointer into the volume tensor.
const float* last_image(const TimeSeriesVolume& vol) {
  return vol.data.data() + static_cast<std::size_t>(vol.timepoints - 1) * vol.pixel_count();
}

}  // namespace

FeatureField time_series_features(const TimeSeriesVolume& vol) {
  validate_volume(vol);
  FeatureField field;
  field.height = vol.height;
  field.width = vol.width;
  field.dim = vol.timepoints;
  field.values.resize(vol.data.size());

  const std::size_t plane = vol.pixel_count();
  detail::parallel_chunks(static_cast<std::size_t>(vol.height), [&](std::size_t r0, std::size_t r1) {
    for (std::size_t r = r0; r < r1; ++r) {
      for (int c = 0; c < vol.width; ++c) {
        std::size_t pixel = r * vol.width + c;
        float* out = field.values.data() + pixel * field.dim;
        for (int t = 0; t < vol.timepoints; ++t) {
          out[t] = vol.data[static_cast<std::size_t>(t) * plane + pixel];
        }
      }
    }
  });
  return field;
}

FeatureField multiscale_features(const TimeSeriesVolume& vol, int max_scale) {
  validate_volume(vol);
  if (max_scale < 1) throw std::invalid_argument("max_scale must be >= 1");
  FeatureField field;
  field.height = vol.height;
  field.width = vol.width;
  field.dim = max_scale;
  field.values.resize(vol.pixel_count() * static_cast<std::size_t>(max_scale));

  const float* img = last_image(vol);
  const int h = vol.height, w = vol.width;
  detail::parallel_chunks(static_cast<std::size_t>(h), [&](std::size_t r0, std::size_t r1) {
    for (std::size_t r = r0; r < r1; ++r) {
      for (int c = 0; c < w; ++c) {
        float* out = field.vec(static_cast<int>(r), c);
        for (int k = 1; k <= max_scale; ++k) {
          int top = static_cast<int>(r) - (k - 1) / 2;
          int left = c - (k - 1) / 2;
          int rlo = std::max(top, 0), rhi = std::min(top + k, h);
          int clo = std::max(left, 0), chi = std::min(left + k, w);
          double sum = 0.0;
          for (int rr = rlo; rr < rhi; ++rr) {
            const float* row = img + static_cast<std::size_t>(rr) * w;
            for (int cc = clo; cc < chi; ++cc) sum += row[cc];
          }
          int count = (rhi - rlo) * (chi - clo);
          out[k - 1] = static_cast<float>(sum / count);
        }
      }
    }
  });
  return field;
}

FeatureField median_scalar_features(const TimeSeriesVolume& vol) {
  validate_volume(vol);
  FeatureField field;
  field.height = vol.height;
  field.width = vol.width;
  field.dim = 1;
  field.values.resize(vol.pixel_count());

  const float* img = last_image(vol);
  const int h = vol.height, w = vol.width;
  detail::parallel_chunks(static_cast<std::size_t>(h), [&](std::size_t r0, std::size_t r1) {
    float window[9];
    for (std::size_t r = r0; r < r1; ++r) {
      for (int c = 0; c < w; ++c) {
        int n = 0;
        for (int dr = -1; dr <= 1; ++dr) {
          int rr = clamp_index(static_cast<int>(r) + dr, h);
          for (int dc = -1; dc <= 1; ++dc) {
            int cc = clamp_index(c + dc, w);
            window[n++] = img[static_cast<std::size_t>(rr) * w + cc];
          }
        }
        std::nth_element(window, window + 4, window + 9);
        field.values[r * w + c] = window[4];
      }
    }
  });
  return field;
}

TimeSeriesVolume smooth_volume(const TimeSeriesVolume& vol, int kernel_size) {
  validate_volume(vol);
  if (kernel_size < 1 || kernel_size % 2 == 0) {
    throw std::invalid_argument("smoothing kernel size must be odd and >= 1");
  }
  if (kernel_size == 1) return vol;

  TimeSeriesVolume out = vol;
  const int h = vol.height, w = vol.width, half = kernel_size / 2;
  const double inv = 1.0 / (static_cast<double>(kernel_size) * kernel_size);
  std::vector<double> rowpass(vol.pixel_count());

  for (int t = 0; t < vol.timepoints; ++t) {
    const float* src = vol.data.data() + static_cast<std::size_t>(t) * vol.pixel_count();
    float* dst = out.data.data() + static_cast<std::size_t>(t) * vol.pixel_count();

    // The clamped box window factorizes per axis, so two 1-D passes suffice.
    detail::parallel_chunks(static_cast<std::size_t>(h), [&](std::size_t r0, std::size_t r1) {
      for (std::size_t r = r0; r < r1; ++r) {
        const float* row = src + r * w;
        for (int c = 0; c < w; ++c) {
          double s = 0.0;
          for (int dc = -half; dc <= half; ++dc) s += row[clamp_index(c + dc, w)];
          rowpass[r * w + c] = s;
        }
      }
    });
    detail::parallel_chunks(static_cast<std::size_t>(h), [&](std::size_t r0, std::size_t r1) {
      for (std::size_t r = r0; r < r1; ++r) {
        for (int c = 0; c < w; ++c) {
          double s = 0.0;
          for (int dr = -half; dr <= half; ++dr) {
            s += rowpass[static_cast<std::size_t>(clamp_index(static_cast<int>(r) + dr, h)) * w + c];
          }
          dst[r * w + c] = static_cast<float>(s * inv);
        }
      }
    });
  }
  return out;
}

FeatureField compute_features(const TimeSeriesVolume& vol, const FeatureMode& mode) {
  switch (mode.kind) {
    case FeatureMode::Kind::TimeSeries:
      return time_series_features(vol);
    case FeatureMode::Kind::Multiscale:
      return multiscale_features(vol, mode.max_scale);
    case FeatureMode::Kind::MedianScalar:
      return median_scalar_features(vol);
  }
  throw std::invalid_argument("unknown feature mode");
}

}  // namespace tsgc
