#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "scmix/colour.hpp"

namespace scmix {

/// Row-major 8-bit RGB raster. Width and height are always at least one.
class RgbImage {
 public:
  RgbImage(int width, int height, RgbColor fill = {});
  RgbImage(int width, int height, std::vector<RgbColor> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }

  RgbColor& at(int x, int y) { return pixels_[index(x, y)]; }
  RgbColor at(int x, int y) const { return pixels_[index(x, y)]; }

  std::span<RgbColor> row(int y) { return {pixels_.data() + index(0, y), static_cast<std::size_t>(width_)}; }
  std::span<const RgbColor> row(int y) const {
    return {pixels_.data() + index(0, y), static_cast<std::size_t>(width_)};
  }

  std::span<RgbColor> pixels() noexcept { return pixels_; }
  std::span<const RgbColor> pixels() const noexcept { return pixels_; }

  /// Interleaved r,g,b bytes, 3 * width * height of them.
  const std::uint8_t* bytes() const noexcept { return reinterpret_cast<const std::uint8_t*>(pixels_.data()); }
  std::uint8_t* bytes() noexcept { return reinterpret_cast<std::uint8_t*>(pixels_.data()); }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<RgbColor> pixels_;
};

/// Single-channel 8-bit plane, used for luma.
struct GrayPlane {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> values;

  std::uint8_t at(int x, int y) const {
    return values[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)];
  }
};

GrayPlane luma_plane(const RgbImage& img);

class ImageIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Decodes PNG or JPEG (detected from the file signature).
RgbImage read_image(const std::filesystem::path& path);
RgbImage decode_image(std::span<const std::uint8_t> data);
void write_png(const std::filesystem::path& path, const RgbImage& img);
std::vector<std::uint8_t> encode_png(const RgbImage& img);

}  // namespace scmix
