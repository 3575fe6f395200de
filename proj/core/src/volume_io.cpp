#include "tsgc/volume_io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

namespace tsgc {

namespace {

float f32_from_le(const unsigned char* b) {
  std::uint32_t u = static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
                    (static_cast<std::uint32_t>(b[2]) << 16) |
                    (static_cast<std::uint32_t>(b[3]) << 24);
  return std::bit_cast<float>(u);
}

void f32_to_le(float v, unsigned char* b) {
  std::uint32_t u = std::bit_cast<std::uint32_t>(v);
  b[0] = static_cast<unsigned char>(u & 0xff);
  b[1] = static_cast<unsigned char>((u >> 8) & 0xff);
  b[2] = static_cast<unsigned char>((u >> 16) & 0xff);
  b[3] = static_cast<unsigned char>((u >> 24) & 0xff);
}

std::string read_header_line(std::istream& in, const std::filesystem::path& path) {
  std::string line;
  if (!std::getline(in, line)) {
    throw IoError("truncated header in " + path.string());
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

// Skips PNM whitespace and '#' comment lines, then reads one unsigned decimal.
int pnm_read_int(std::istream& in, const std::filesystem::path& path) {
  int ch = in.get();
  while (ch != EOF) {
    if (ch == '#') {
      while (ch != EOF && ch != '\n') ch = in.get();
    } else if (std::isspace(ch)) {
      ch = in.get();
    } else {
      break;
    }
  }
  if (ch == EOF || !std::isdigit(ch)) {
    throw IoError("malformed PNM header in " + path.string());
  }
  long value = 0;
  while (ch != EOF && std::isdigit(ch)) {
    value = value * 10 + (ch - '0');
    if (value > 1'000'000'000L) throw IoError("PNM header value out of range in " + path.string());
    ch = in.get();
  }
  if (ch != EOF) in.unget();
  return static_cast<int>(value);
}

struct PnmImage {
  int width = 0;
  int height = 0;
  std::vector<unsigned char> bytes;
};

PnmImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || magic[1] != '5') {
    throw IoError("unsupported PNM format in " + path.string() + " (expected binary P5)");
  }
  PnmImage img;
  img.width = pnm_read_int(in, path);
  img.height = pnm_read_int(in, path);
  int maxval = pnm_read_int(in, path);
  if (img.width < 1 || img.height < 1) throw IoError("bad PGM dimensions in " + path.string());
  if (maxval != 255) throw IoError("unsupported PGM maxval in " + path.string());
  in.get();  // single whitespace byte before the raster
  std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  img.bytes.resize(n);
  in.read(reinterpret_cast<char*>(img.bytes.data()), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) {
    throw IoError("truncated PGM raster in " + path.string());
  }
  return img;
}

void write_pgm(const std::filesystem::path& path, int width, int height,
               const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "P5\n" << width << " " << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

void validate_volume(const TimeSeriesVolume& vol) {
  if (vol.height < 1 || vol.width < 1 || vol.timepoints < 1) {
    throw std::invalid_argument("volume dimensions must all be >= 1");
  }
  std::size_t expected = vol.pixel_count() * static_cast<std::size_t>(vol.timepoints);
  if (vol.data.size() != expected) {
    throw std::invalid_argument("volume data length does not match dimensions");
  }
  for (float v : vol.data) {
    if (!std::isfinite(v)) throw std::invalid_argument("volume contains non-finite intensity");
  }
}

std::size_t Mask::count() const {
  return static_cast<std::size_t>(std::count_if(bits.begin(), bits.end(),
                                                [](std::uint8_t b) { return b != 0; }));
}

TimeSeriesVolume load_volume(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());

  std::string magic = read_header_line(in, path);
  if (magic != "TSV1") {
    if (magic.rfind("TSV", 0) == 0) throw IoError("unsupported TSV version in " + path.string());
    throw IoError(path.string() + " is not a TSV container");
  }
  std::istringstream dims(read_header_line(in, path));
  long h = 0, w = 0, t = 0;
  std::string extra;
  if (!(dims >> h >> w >> t) || (dims >> extra) || h < 1 || w < 1 || t < 1) {
    throw IoError("malformed TSV dimension line in " + path.string());
  }
  std::string elem = read_header_line(in, path);
  if (elem != "f32le") throw IoError("unsupported TSV element type in " + path.string());

  TimeSeriesVolume vol;
  vol.height = static_cast<int>(h);
  vol.width = static_cast<int>(w);
  vol.timepoints = static_cast<int>(t);

  std::size_t count = static_cast<std::size_t>(h) * static_cast<std::size_t>(w) *
                      static_cast<std::size_t>(t);
  std::vector<unsigned char> payload(count * 4);
  in.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
  if (static_cast<std::size_t>(in.gcount()) != payload.size()) {
    throw IoError("TSV payload shorter than header declares in " + path.string());
  }
  if (in.get() != EOF) {
    throw IoError("TSV payload longer than header declares in " + path.string());
  }

  vol.data.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    float v = f32_from_le(&payload[i * 4]);
    if (!std::isfinite(v)) throw IoError("non-finite intensity in " + path.string());
    vol.data[i] = v;
  }
  return vol;
}

void save_volume(const TimeSeriesVolume& vol, const std::filesystem::path& path) {
  validate_volume(vol);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "TSV1\n" << vol.height << " " << vol.width << " " << vol.timepoints << "\nf32le\n";

  constexpr std::size_t kChunk = 1 << 16;
  std::vector<unsigned char> buf(kChunk * 4);
  std::size_t i = 0;
  while (i < vol.data.size()) {
    std::size_t n = std::min(kChunk, vol.data.size() - i);
    for (std::size_t k = 0; k < n; ++k) f32_to_le(vol.data[i + k], &buf[k * 4]);
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(n * 4));
    i += n;
  }
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

Mask load_mask(const std::filesystem::path& path) {
  PnmImage img = read_pgm(path);
  Mask mask;
  mask.height = img.height;
  mask.width = img.width;
  mask.bits.resize(img.bytes.size());
  for (std::size_t i = 0; i < img.bytes.size(); ++i) mask.bits[i] = img.bytes[i] > 0 ? 1 : 0;
  return mask;
}

void save_mask(const Mask& mask, const std::filesystem::path& path) {
  std::vector<unsigned char> bytes(mask.bits.size());
  for (std::size_t i = 0; i < mask.bits.size(); ++i) bytes[i] = mask.bits[i] ? 255 : 0;
  write_pgm(path, mask.width, mask.height, bytes);
}

LabelMap load_labels(const std::filesystem::path& path) {
  PnmImage img = read_pgm(path);
  LabelMap map;
  map.height = img.height;
  map.width = img.width;
  map.labels.resize(img.bytes.size());
  for (std::size_t i = 0; i < img.bytes.size(); ++i) {
    if (img.bytes[i] > 3) throw IoError("label value out of range in " + path.string());
    map.labels[i] = static_cast<Label>(img.bytes[i]);
  }
  return map;
}

void save_labels(const LabelMap& labels, const std::filesystem::path& path) {
  std::vector<unsigned char> bytes(labels.labels.size());
  for (std::size_t i = 0; i < labels.labels.size(); ++i) {
    bytes[i] = static_cast<unsigned char>(labels.labels[i]);
  }
  write_pgm(path, labels.width, labels.height, bytes);
}

void render_labels(const LabelMap& labels, const std::filesystem::path& path) {
  static constexpr unsigned char kPalette[4][3] = {
      {0, 0, 0},      // background
      {0, 0, 255},    // healthy: blue
      {255, 255, 0},  // tumor: yellow
      {0, 255, 0},    // vessel: green
  };
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "P6\n" << labels.width << " " << labels.height << "\n255\n";
  std::vector<unsigned char> row(static_cast<std::size_t>(labels.width) * 3);
  for (int r = 0; r < labels.height; ++r) {
    for (int c = 0; c < labels.width; ++c) {
      const unsigned char* rgb = kPalette[static_cast<int>(labels.at(r, c))];
      row[c * 3 + 0] = rgb[0];
      row[c * 3 + 1] = rgb[1];
      row[c * 3 + 2] = rgb[2];
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace tsgc
