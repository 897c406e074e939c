#include "scmix/image.hpp"

#include <string>

#include "scmix/kernels.hpp"

namespace scmix {
namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("image dimensions must be >= 1, got " + std::to_string(width) + "x" +
                                std::to_string(height));
  }
}

}  // namespace

RgbImage::RgbImage(int width, int height, RgbColor fill) : width_(width), height_(height) {
  check_dims(width, height);
  pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

RgbImage::RgbImage(int width, int height, std::vector<RgbColor> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dims(width, height);
  if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw std::invalid_argument("pixel count does not match image dimensions");
  }
}

GrayPlane luma_plane(const RgbImage& img) {
  GrayPlane plane{img.width(), img.height(), std::vector<std::uint8_t>(img.size())};
  kernels::active().luma_row(img.bytes(), plane.values.data(), img.size());
  return plane;
}

}  // namespace scmix
