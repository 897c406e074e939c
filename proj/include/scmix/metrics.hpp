#pragma once

#include <span>

#include "scmix/image.hpp"

namespace scmix {

struct SsimParams {
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 255.0;
};

/// Normalized 1-D Gaussian taps for the SSIM window.
std::vector<double> gaussian_taps(int window, double sigma);

/// Single-scale SSIM on luma, averaged over every window position that fits
/// fully inside the image. Both images must match in size and be at least
/// window x window.
double ssim(const RgbImage& a, const RgbImage& b, const SsimParams& params = {});
double ssim(const GrayPlane& a, const GrayPlane& b, const SsimParams& params = {});

/// Mean over channels of the Pearson correlation between 256-bin histograms.
double histogram_correlation(const RgbImage& a, const RgbImage& b);

/// Pearson correlation of two equal-length count vectors, with the degenerate
/// zero-variance case mapped to 1 (identical) or 0.
double pearson(std::span<const double> x, std::span<const double> y);

/// dot(u, v) / (|u| |v|), clamped to [-1, 1].
double cosine_similarity(std::span<const double> u, std::span<const double> v);

}  // namespace scmix
