#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "scmix/illusion.hpp"

namespace scmix {
namespace {

using testing::brute_force_partition;

constexpr RgbColor kRed{255, 0, 0};
constexpr RgbColor kGreen{0, 255, 0};
constexpr RgbColor kBlue{0, 0, 255};
constexpr RgbColor kCyan{0, 255, 255};
constexpr RgbColor kYellow{255, 255, 0};
constexpr RgbColor kMagenta{255, 0, 255};
constexpr RgbColor kBlack{0, 0, 0};
constexpr RgbColor kWhite{255, 255, 255};

std::vector<RgbColor> row_of(const RgbImage& img, int y = 0) {
  const auto r = img.row(y);
  return {r.begin(), r.end()};
}

std::vector<RgbColor> column_of(const RgbImage& img, int x) {
  std::vector<RgbColor> out;
  for (int y = 0; y < img.height(); ++y) out.push_back(img.at(x, y));
  return out;
}

std::vector<RgbColor> repeat(std::initializer_list<std::pair<int, RgbColor>> runs) {
  std::vector<RgbColor> out;
  for (const auto& [n, c] : runs) out.insert(out.end(), static_cast<std::size_t>(n), c);
  return out;
}

TEST(Variants, NamesRoundTrip) {
  for (const IllusionVariant v : kAllVariants) {
    EXPECT_EQ(parse_variant(variant_name(v)), v);
  }
  EXPECT_EQ(variant_name(IllusionVariant::OstwaldChecker), "ostwald_checker");
  EXPECT_FALSE(parse_variant("scmix4").has_value());
}

TEST(Apply, DegreeOneIsIdentityForEveryVariant) {
  const RgbImage img = testing::scene(1, 37, 23);
  for (const IllusionVariant v : kAllVariants) {
    EXPECT_EQ(apply({v, 1, 42}, img), img) << variant_name(v);
  }
}

TEST(Apply, RejectsBadDegrees) {
  const RgbImage img(4, 4);
  EXPECT_THROW(apply({IllusionVariant::SCMix1, 0, 0}, img), ContractViolation);
  EXPECT_THROW(apply({IllusionVariant::SCMix1, -3, 0}, img), ContractViolation);
  EXPECT_THROW(scmix_3a(img, 1), ContractViolation);
  EXPECT_THROW(ostwald_random(img, 1, 0), ContractViolation);
}

TEST(SCMix3A, SinglePixelPartialStripe) {
  const RgbImage img(1, 1, {200, 100, 50});
  EXPECT_EQ(apply({IllusionVariant::SCMix3A, 2, 0}, img).at(0, 0), (RgbColor{124, 0, 0}));
}

TEST(SCMix3A, NarrowImage) {
  const RgbImage img(3, 1, {200, 100, 50});
  EXPECT_EQ(row_of(scmix_3a(img, 2)), (std::vector<RgbColor>{{124, 0, 0}, {124, 0, 0}, {0, 124, 0}}));
}

TEST(SCMix3A, WhiteCyclesChannels) {
  const RgbImage img(6, 1, kWhite);
  EXPECT_EQ(row_of(scmix_3a(img, 2)), repeat({{2, kRed}, {2, kGreen}, {2, kBlue}}));
}

TEST(SCMix2, WhiteAlternatesYellowBlue) {
  const RgbImage img(4, 1, kWhite);
  EXPECT_EQ(row_of(scmix_2(img, 2)), repeat({{2, kYellow}, {2, kBlue}}));
}

TEST(SCMix1, SolidPatch) {
  const RgbImage out = scmix_1(RgbImage(4, 4, {200, 100, 50}), 4);
  for (int y = 0; y < 4; ++y) {
    EXPECT_EQ(row_of(out, y), (std::vector<RgbColor>{{124, 124, 124}, {200, 100, 50}, {200, 100, 50}, {124, 124, 124}}));
  }
}

TEST(ChromaStripe, Geometry) {
  EXPECT_EQ(chroma_stripe(4, 4).offset, 1);
  EXPECT_EQ(chroma_stripe(4, 4).width, 2);
  EXPECT_EQ(chroma_stripe(5, 5).width, 3);
  EXPECT_EQ(chroma_stripe(5, 5).offset, 1);
  // Clipped edge patch narrower than the stripe.
  EXPECT_EQ(chroma_stripe(2, 9).width, 2);
  EXPECT_EQ(chroma_stripe(2, 9).offset, 0);
  EXPECT_EQ(chroma_stripe(7, 9).width, 5);
  EXPECT_EQ(chroma_stripe(7, 9).offset, 1);
}

TEST(SCMix3B, HalfRedHalfGreen) {
  const RgbImage out = scmix_3b(RgbImage(10, 10, {100, 100, 0}), 10);
  const StripeSpan s = chroma_stripe(10, 10);
  for (int x = s.offset; x < s.offset + s.width; ++x) {
    EXPECT_EQ(column_of(out, x), repeat({{5, kRed}, {5, kGreen}}));
  }
  const std::uint8_t l = luminance({100, 100, 0}).value;
  EXPECT_EQ(out.at(0, 0), (RgbColor{l, l, l}));
}

TEST(SCMix3B, SolidBlueAndBlack) {
  const RgbImage blue = scmix_3b(RgbImage(6, 6, kBlue), 6);
  const StripeSpan s = chroma_stripe(6, 6);
  EXPECT_EQ(column_of(blue, s.offset), repeat({{6, kBlue}}));
  // No channel mass at all: the stripe stays on the greyscale base.
  EXPECT_EQ(scmix_3b(RgbImage(6, 6, kBlack), 6), RgbImage(6, 6, kBlack));
}

TEST(SCMix6, SolidRed) {
  const RgbImage out = scmix_6(RgbImage(8, 8, kRed), 8);
  EXPECT_EQ(column_of(out, chroma_stripe(8, 8).offset), repeat({{8, kRed}}));
}

TEST(SCMix6, GreyGivesSixEqualSegments) {
  const RgbImage out = scmix_6(RgbImage(12, 12, {128, 128, 128}), 12);
  EXPECT_EQ(column_of(out, chroma_stripe(12, 12).offset),
            repeat({{2, kRed}, {2, kGreen}, {2, kBlue}, {2, kCyan}, {2, kYellow}, {2, kMagenta}}));
}

TEST(OstwaldRGB, WhiteUnchanged) {
  const RgbImage img(17, 3, kWhite);
  for (int d : {2, 5}) EXPECT_EQ(ostwald_rgb(img, d), img);
}

TEST(OstwaldRGB, OneFullGroup) {
  const RgbImage out = ostwald_rgb(RgbImage(15, 2, {200, 100, 50}), 5);
  const auto want = repeat({{3, kBlack}, {3, kWhite}, {9, {255, 85, 0}}});
  EXPECT_EQ(row_of(out, 0), want);
  EXPECT_EQ(row_of(out, 1), want);
  EXPECT_EQ(brute_force_partition(15, {Rational(55, 255), Rational(50, 255), Rational(150, 255)}),
            (std::vector<int>{3, 3, 9}));
}

TEST(OstwaldChecker, GreyBlocks) {
  const RgbImage out = ostwald_checker(RgbImage(8, 8, {128, 128, 128}), 4);
  for (int y = 0; y < 8; ++y) {
    EXPECT_EQ(row_of(out, y), repeat({{2, kBlack}, {2, kWhite}, {2, kBlack}, {2, kWhite}}));
  }
}

TEST(OstwaldRandom, GreyBlocksAreEitherOrder) {
  const RgbImage out = ostwald_random(RgbImage(40, 40, {128, 128, 128}), 4, 7);
  const auto bw = repeat({{2, kBlack}, {2, kWhite}});
  const auto wb = repeat({{2, kWhite}, {2, kBlack}});
  int swapped = 0;
  for (int by = 0; by < 10; ++by) {
    for (int bx = 0; bx < 10; ++bx) {
      const auto r = out.row(by * 4).subspan(static_cast<std::size_t>(bx) * 4, 4);
      const std::vector<RgbColor> block(r.begin(), r.end());
      ASSERT_TRUE(block == bw || block == wb);
      const bool is_swapped = block == wb;
      EXPECT_EQ(is_swapped, ostwald_random_swaps(7, static_cast<std::uint64_t>(by), static_cast<std::uint64_t>(bx)));
      swapped += is_swapped ? 1 : 0;
    }
  }
  EXPECT_GT(swapped, 0);
  EXPECT_LT(swapped, 100);
}

TEST(OstwaldRandom, HueStaysRightmost) {
  const RgbImage out = ostwald_random(RgbImage(15, 15, {200, 100, 50}), 15, 3);
  const auto r = row_of(out);
  EXPECT_EQ(std::vector<RgbColor>(r.begin() + 6, r.end()), repeat({{9, {255, 85, 0}}}));
}

TEST(OstwaldRandom, Mix64KnownValues) {
  // splitmix64 applied to a zero state yields these first outputs.
  EXPECT_EQ(mix64(0), 0xE220A8397B1DCDAFull);
  EXPECT_EQ(mix64(0x9E3779B97F4A7C15ull), 0x6E789E6AA1B965F4ull);
}

TEST(OstwaldRandom, SwapFrequencyIsNearHalf) {
  int swaps = 0;
  for (std::uint64_t r = 0; r < 100; ++r)
    for (std::uint64_t c = 0; c < 100; ++c) swaps += ostwald_random_swaps(12345, r, c) ? 1 : 0;
  EXPECT_GE(swaps, 4700);
  EXPECT_LE(swaps, 5300);
}

TEST(OstwaldRandom, SeedMatters) {
  const RgbImage img = testing::scene(4, 64, 64);
  EXPECT_EQ(ostwald_random(img, 4, 9), ostwald_random(img, 4, 9));
  EXPECT_NE(ostwald_random(img, 4, 9), ostwald_random(img, 4, 10));
}

// ---- properties over fixtures -------------------------------------------------

struct Case {
  IllusionVariant variant;
  int degree;
};

std::vector<Case> all_cases() {
  std::vector<Case> cases;
  for (const IllusionVariant v : kAllVariants)
    for (const int d : {2, 3, 4, 5, 7, 8, 16}) cases.push_back({v, d});
  return cases;
}

TEST(Properties, MatchReferenceRenderer) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 6; ++i) {
    const int w = testing::uniform_int(rng, 1, 41);
    const int h = testing::uniform_int(rng, 1, 29);
    const RgbImage img = i % 2 == 0 ? testing::scene(static_cast<std::uint64_t>(i), w, h) : testing::noise_image(rng, w, h);
    for (const Case& c : all_cases()) {
      const DistortionSpec spec{c.variant, c.degree, 77};
      EXPECT_EQ(apply(spec, img), testing::reference_distort(spec, img))
          << variant_name(c.variant) << " d=" << c.degree << " " << w << "x" << h;
    }
  }
}

TEST(Properties, DimensionsAndDeterminism) {
  const RgbImage img = testing::scene(9, 50, 31);
  for (const Case& c : all_cases()) {
    const RgbImage a = apply({c.variant, c.degree, 3}, img);
    EXPECT_EQ(a.width(), img.width());
    EXPECT_EQ(a.height(), img.height());
    EXPECT_EQ(a, apply({c.variant, c.degree, 3}, img));
  }
}

TEST(Properties, ChannelMasks) {
  const RgbImage img = testing::scene(2, 48, 40);
  for (const int d : {2, 3, 6}) {
    const RgbImage a = scmix_3a(img, d);
    for (const RgbColor p : a.pixels()) EXPECT_LE((p.r != 0) + (p.g != 0) + (p.b != 0), 1);
    const RgbImage two = scmix_2(img, d);
    for (int y = 0; y < two.height(); ++y)
      for (int x = 0; x < two.width(); ++x) {
        const RgbColor p = two.at(x, y);
        if ((x / d) % 2 == 0) {
          EXPECT_EQ(p.b, 0);
          EXPECT_EQ(p.r, p.g);
        } else {
          EXPECT_EQ(p.r, 0);
          EXPECT_EQ(p.g, 0);
        }
      }
  }
}

TEST(Properties, GreyscaleOutsideStripes) {
  const RgbImage img = testing::scene(6, 45, 38);
  for (const int d : {2, 4, 7, 10}) {
    for (auto fn : {scmix_1, scmix_3b, scmix_6}) {
      const RgbImage out = fn(img, d);
      for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
          const int x0 = x / d * d;
          const StripeSpan s = chroma_stripe(std::min(d, img.width() - x0), d);
          const int local = x - x0;
          if (local >= s.offset && local < s.offset + s.width) continue;
          const RgbColor p = out.at(x, y);
          EXPECT_TRUE(p.r == p.g && p.g == p.b);
          EXPECT_EQ(p.r, luminance(img.at(x, y)).value);
        }
    }
  }
}

TEST(Properties, SCMix1StripeSharesOneColourPerPatch) {
  const RgbImage img = testing::scene(8, 30, 30);
  const int d = 6;
  const RgbImage out = scmix_1(img, d);
  for (int y0 = 0; y0 < 30; y0 += d)
    for (int x0 = 0; x0 < 30; x0 += d) {
      const StripeSpan s = chroma_stripe(d, d);
      const RgbColor first = out.at(x0 + s.offset, y0);
      for (int y = y0; y < y0 + d; ++y)
        for (int x = x0 + s.offset; x < x0 + s.offset + s.width; ++x) EXPECT_EQ(out.at(x, y), first);
    }
}

TEST(Properties, OstwaldReconstructionBound) {
  const auto fixtures = testing::scene_set(30, 4, 67, 53);
  for (const RgbImage& img : fixtures) {
    for (const IllusionVariant v :
         {IllusionVariant::OstwaldRGB, IllusionVariant::OstwaldChecker, IllusionVariant::OstwaldRandom}) {
      for (const int d : {2, 4, 8, 16}) {
        const auto report = testing::ostwald_mean_bound(img, apply({v, d, 5}, img), v, d);
        EXPECT_GT(report.regions, 0);
        EXPECT_EQ(report.violations, 0) << variant_name(v) << " d=" << d << " worst " << report.worst_ratio;
      }
    }
  }
}

TEST(Properties, SegmentHeightsAreProportional) {
  std::mt19937_64 rng(17);
  const std::vector<RgbColor> fills6{kRed, kGreen, kBlue, kCyan, kYellow, kMagenta};
  for (int trial = 0; trial < 200; ++trial) {
    const bool six = trial % 2 == 1;
    const int d = testing::uniform_int(rng, 2, 14);
    RgbImage patch = testing::noise_image(rng, d, d);
    if (trial % 5 == 0) patch = RgbImage(d, d, patch.at(0, 0));
    const RgbImage out = six ? scmix_6(patch, d) : scmix_3b(patch, d);
    const std::vector<Rational> w = testing::proportional_weights(patch, six);
    const std::vector<RgbColor> fills(fills6.begin(), fills6.begin() + (six ? 6 : 3));
    const std::vector<int> heights = testing::segment_heights(out, chroma_stripe(d, d).offset, 0, d, fills);
    ASSERT_EQ(heights.size(), fills.size());
    EXPECT_EQ(heights, brute_force_partition(d, w));
    for (std::size_t i = 0; i < w.size(); ++i) EXPECT_LT(boost::abs(Rational(heights[i]) - w[i] * d), 1);
  }
}

}  // namespace
}  // namespace scmix
