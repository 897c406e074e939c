#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "scmix/colour.hpp"

namespace scmix {
namespace {

using testing::brute_force_partition;

TEST(Luminance, Examples) {
  EXPECT_EQ(luminance({255, 255, 255}).value, 255);
  EXPECT_EQ(luminance({0, 0, 0}).value, 0);
  // 0.299 * 255 = 76.245
  EXPECT_EQ(luminance({255, 0, 0}).value, 76);
  EXPECT_EQ(luminance({200, 100, 50}).value, 124);
}

TEST(Luminance, MatchesRoundHalfUpOfRealFormula) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20000; ++i) {
    const RgbColor c{static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng())};
    const Rational exact = Rational(299 * c.r + 587 * c.g + 114 * c.b, 1000);
    EXPECT_EQ(luminance(c).value, round_half_up(exact));
  }
}

TEST(Luminance, MonotoneInEachChannel) {
  for (int other = 0; other < 256; other += 51) {
    for (int v = 0; v < 255; ++v) {
      const auto a = static_cast<std::uint8_t>(v);
      const auto b = static_cast<std::uint8_t>(v + 1);
      const auto o = static_cast<std::uint8_t>(other);
      EXPECT_LE(luminance({a, o, o}).value, luminance({b, o, o}).value);
      EXPECT_LE(luminance({o, a, o}).value, luminance({o, b, o}).value);
      EXPECT_LE(luminance({o, o, a}).value, luminance({o, o, b}).value);
    }
  }
}

TEST(RoundHalfUp, Ties) {
  EXPECT_EQ(round_half_up(Rational(1, 2)), 1);
  EXPECT_EQ(round_half_up(Rational(3, 2)), 2);
  EXPECT_EQ(round_half_up(Rational(249, 2)), 125);
  EXPECT_EQ(round_half_up(Rational(124, 1)), 124);
  EXPECT_EQ(round_half_up(Rational(1249, 10)), 125);
  EXPECT_EQ(round_half_up(Rational(1241, 10)), 124);
}

TEST(Ostwald, SaturatedPrimary) {
  const OstwaldWeights w = ostwald_decompose({255, 0, 0});
  EXPECT_EQ(w.black_w, 0);
  EXPECT_EQ(w.white_w, 0);
  EXPECT_EQ(w.hue_w, 1);
  EXPECT_EQ(w.full_hue, (RationalColor{255, 0, 0}));
}

TEST(Ostwald, AchromaticUsesSentinel) {
  const OstwaldWeights w = ostwald_decompose({128, 128, 128});
  EXPECT_EQ(w.black_w, Rational(127, 255));
  EXPECT_EQ(w.white_w, Rational(128, 255));
  EXPECT_EQ(w.hue_w, 0);
  EXPECT_EQ(w.full_hue, (RationalColor{255, 255, 255}));
}

TEST(Ostwald, GeneralColour) {
  const OstwaldWeights w = ostwald_decompose({200, 100, 50});
  EXPECT_EQ(w.black_w, Rational(55, 255));
  EXPECT_EQ(w.white_w, Rational(50, 255));
  EXPECT_EQ(w.hue_w, Rational(150, 255));
  EXPECT_EQ(w.full_hue, (RationalColor{255, 85, 0}));
  // 50 + 150/255 * full_hue reproduces the colour channel by channel.
  for (int ch = 0; ch < 3; ++ch) {
    const Rational v = Rational(50) + w.hue_w * w.full_hue[ch];
    EXPECT_EQ(v, Rational(RgbColor{200, 100, 50}[ch]));
  }
}

TEST(Ostwald, Recompose) {
  EXPECT_EQ(ostwald_recompose(ostwald_decompose({200, 100, 50})), (RgbColor{200, 100, 50}));
  OstwaldWeights black{1, 0, 0, {255, 255, 255}};
  EXPECT_EQ(ostwald_recompose(black), (RgbColor{0, 0, 0}));
  OstwaldWeights w{Rational(55, 255), Rational(50, 255), Rational(150, 255), {255, 85, 0}};
  EXPECT_EQ(ostwald_recompose(w), (RgbColor{200, 100, 50}));
}

TEST(Ostwald, RoundTripAndInvariantsOnRandomColours) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100000; ++i) {
    const RgbColor c{static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng())};
    const OstwaldWeights w = ostwald_decompose(c);
    ASSERT_EQ(w.black_w + w.white_w + w.hue_w, 1);
    if (w.hue_w > 0) {
      const Rational lo = std::min({w.full_hue.r, w.full_hue.g, w.full_hue.b});
      const Rational hi = std::max({w.full_hue.r, w.full_hue.g, w.full_hue.b});
      ASSERT_EQ(lo, 0);
      ASSERT_EQ(hi, 255);
    }
    ASSERT_EQ(ostwald_recompose(w), c);
  }
}

TEST(Partition, Examples) {
  const std::vector<Rational> exact{Rational(1, 2), Rational(3, 10), Rational(1, 5)};
  EXPECT_EQ(largest_remainder_partition(10, exact), (std::vector<int>{5, 3, 2}));

  const std::vector<Rational> thirds(3, Rational(1, 3));
  EXPECT_EQ(largest_remainder_partition(10, thirds), (std::vector<int>{4, 3, 3}));
  EXPECT_EQ(brute_force_partition(10, thirds), (std::vector<int>{4, 3, 3}));

  const std::vector<Rational> degenerate{0, 1, 0};
  EXPECT_EQ(largest_remainder_partition(7, degenerate), (std::vector<int>{0, 7, 0}));
}

TEST(Partition, RejectsBadWeights) {
  const std::vector<Rational> short_sum{Rational(1, 2), Rational(1, 3)};
  EXPECT_THROW(largest_remainder_partition(5, short_sum), ContractViolation);
  const std::vector<Rational> negative{Rational(3, 2), Rational(-1, 2)};
  EXPECT_THROW(largest_remainder_partition(5, negative), ContractViolation);
  const std::vector<Rational> ok{1};
  EXPECT_THROW(largest_remainder_partition(0, ok), ContractViolation);
}

TEST(Partition, RandomMatchesBruteForceAndBounds) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 400; ++trial) {
    const int total = testing::uniform_int(rng, 1, trial < 300 ? 12 : 64);
    const std::size_t parts = static_cast<std::size_t>(testing::uniform_int(rng, 1, trial < 300 ? 4 : 6));
    std::vector<std::int64_t> raw(parts);
    std::int64_t sum = 0;
    for (auto& r : raw) {
      r = testing::uniform_int(rng, 0, 9);
      sum += r;
    }
    if (sum == 0) {
      raw[0] = 1;
      sum = 1;
    }
    std::vector<Rational> w;
    for (auto r : raw) w.emplace_back(r, sum);

    const std::vector<int> got = largest_remainder_partition(total, w);
    int acc = 0;
    for (std::size_t i = 0; i < parts; ++i) {
      acc += got[i];
      EXPECT_LT(boost::abs(Rational(got[i]) - w[i] * total), 1);
    }
    EXPECT_EQ(acc, total);
    if (trial < 300) {
      EXPECT_EQ(got, brute_force_partition(total, w)) << "trial " << trial;
    }
  }
}

}  // namespace
}  // namespace scmix
