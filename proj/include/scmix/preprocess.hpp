#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "scmix/image.hpp"

namespace scmix {

inline constexpr int kCanonicalSize = 360;

/// Largest accepted box-blur kernel; keeps window sums below 2^31.
inline constexpr int kMaxBlurKernel = 2047;

struct PreprocessStep {
  enum class Kind { None, DownUp, BoxBlur };
  Kind kind = Kind::None;
  int param = 1;  // D/U factor or blur kernel size

  friend bool operator==(const PreprocessStep&, const PreprocessStep&) = default;
};

/// Ordered chain of low-pass steps. Textual tag: "none", "du8", "blur5", "du8+blur5".
struct PreprocessSpec {
  std::vector<PreprocessStep> steps;

  std::string tag() const;
  static PreprocessSpec parse(std::string_view tag);  // throws std::invalid_argument

  friend bool operator==(const PreprocessSpec&, const PreprocessSpec&) = default;
};

/// Bilinear resize with half-pixel-centered sampling (align corners off).
RgbImage resize_bilinear(const RgbImage& img, int width, int height);

/// 360x360 bilinear resize; identity on 360x360 input.
RgbImage resize_canonical(const RgbImage& img);

/// Area-mean downscale by `factor` to ceil(w/f) x ceil(h/f), then bilinear upscale back.
/// Throws std::invalid_argument when factor exceeds a dimension longer than one pixel.
RgbImage down_up(const RgbImage& img, int factor);

/// Area-mean downscale by `factor`. Trailing blocks are clipped.
RgbImage downscale_area(const RgbImage& img, int factor);

/// kernel x kernel mean with replicated borders, round half up. Kernel must be odd.
RgbImage box_blur(const RgbImage& img, int kernel);

RgbImage apply_preprocess(const PreprocessSpec& spec, const RgbImage& img);

}  // namespace scmix
