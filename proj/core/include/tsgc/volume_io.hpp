#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <vector>

namespace tsgc {

// Thrown for missing files, malformed headers and payload size mismatches.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense H x W x T intensity tensor in Hounsfield units, time-major:
// data[t * H * W + row * W + col].
struct TimeSeriesVolume {
  int height = 0;
  int width = 0;
  int timepoints = 0;
  double pixel_spacing_mm = 1.0;  // metadata only, never consumed by the algorithms
  std::vector<float> data;

  std::size_t index(int t, int r, int c) const {
    return (static_cast<std::size_t>(t) * height + r) * static_cast<std::size_t>(width) + c;
  }
  float at(int t, int r, int c) const { return data[index(t, r, c)]; }
  float& at(int t, int r, int c) { return data[index(t, r, c)]; }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
  }
};

// Checks dims >= 1, payload size and finiteness; throws std::invalid_argument.
void validate_volume(const TimeSeriesVolume& vol);

struct Mask {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> bits;  // nonzero = inside

  static Mask zeros(int height, int width) {
    return Mask{height, width,
                std::vector<std::uint8_t>(static_cast<std::size_t>(height) * width, 0)};
  }
  bool at(int r, int c) const { return bits[static_cast<std::size_t>(r) * width + c] != 0; }
  void set(int r, int c, bool v) { bits[static_cast<std::size_t>(r) * width + c] = v ? 1 : 0; }
  std::size_t count() const;
};

enum class Label : std::uint8_t { Background = 0, Healthy = 1, Tumor = 2, Vessel = 3 };

struct LabelMap {
  int height = 0;
  int width = 0;
  std::vector<Label> labels;

  static LabelMap background(int height, int width) {
    return LabelMap{height, width,
                    std::vector<Label>(static_cast<std::size_t>(height) * width,
                                       Label::Background)};
  }
  Label at(int r, int c) const { return labels[static_cast<std::size_t>(r) * width + c]; }
  void set(int r, int c, Label l) { labels[static_cast<std::size_t>(r) * width + c] = l; }
};

// TSV container:
//   line 1: "TSV1"
//   line 2: "H W T" (ASCII decimals, space separated)
//   line 3: "f32le"
//   payload: exactly H*W*T little-endian 32-bit floats, laid out [t][row][col],
//            row-major within a timepoint.
// The payload length must match the header exactly; non-finite samples are rejected.
TimeSeriesVolume load_volume(const std::filesystem::path& path);
void save_volume(const TimeSeriesVolume& vol, const std::filesystem::path& path);

// Masks are binary PGM (P5, maxval 255); any nonzero pixel is inside.
Mask load_mask(const std::filesystem::path& path);
void save_mask(const Mask& mask, const std::filesystem::path& path);

// Label archives are PGM (P5, maxval 255) holding raw values 0..3.
LabelMap load_labels(const std::filesystem::path& path);
void save_labels(const LabelMap& labels, const std::filesystem::path& path);

// Human-readable render: PPM (P6) with background black, healthy blue,
// tumor yellow, vessel green.
void render_labels(const LabelMap& labels, const std::filesystem::path& path);

}  // namespace tsgc
