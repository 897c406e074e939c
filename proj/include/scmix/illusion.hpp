#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "scmix/image.hpp"

namespace scmix {

enum class IllusionVariant {
  SCMix1,
  SCMix2,
  SCMix3A,
  SCMix3B,
  SCMix6,
  OstwaldRGB,
  OstwaldChecker,
  OstwaldRandom,
};

inline constexpr std::array<IllusionVariant, 8> kAllVariants = {
    IllusionVariant::SCMix1,     IllusionVariant::SCMix2,         IllusionVariant::SCMix3A,
    IllusionVariant::SCMix3B,    IllusionVariant::SCMix6,         IllusionVariant::OstwaldRGB,
    IllusionVariant::OstwaldChecker, IllusionVariant::OstwaldRandom,
};

/// Stable lowercase identifier used in file names and CSV output ("scmix3a", "ostwald_checker", ...).
std::string_view variant_name(IllusionVariant v);
std::optional<IllusionVariant> parse_variant(std::string_view name);

struct DistortionSpec {
  IllusionVariant variant = IllusionVariant::SCMix1;
  int degree = 1;
  std::uint64_t seed = 0;
};

/// Degree 1 returns a copy of the input for every variant.
RgbImage apply(const DistortionSpec& spec, const RgbImage& img);

// Individual transforms; all require degree >= 2.
RgbImage scmix_1(const RgbImage& img, int degree);
RgbImage scmix_2(const RgbImage& img, int degree);
RgbImage scmix_3a(const RgbImage& img, int degree);
RgbImage scmix_3b(const RgbImage& img, int degree);
RgbImage scmix_6(const RgbImage& img, int degree);
RgbImage ostwald_rgb(const RgbImage& img, int degree);
RgbImage ostwald_checker(const RgbImage& img, int degree);
RgbImage ostwald_random(const RgbImage& img, int degree, std::uint64_t seed);

/// Geometry of the chroma stripe inside a patch of the given width.
struct StripeSpan {
  int offset = 0;
  int width = 0;
};
StripeSpan chroma_stripe(int patch_width, int degree);

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Whether the Ostwald Random block at (block_row, block_col) renders white
/// before black. Top bit of mix64(mix64(mix64(seed) ^ row) ^ col).
constexpr bool ostwald_random_swaps(std::uint64_t seed, std::uint64_t block_row, std::uint64_t block_col) noexcept {
  return (mix64(mix64(mix64(seed) ^ block_row) ^ block_col) >> 63) != 0;
}

}  // namespace scmix
