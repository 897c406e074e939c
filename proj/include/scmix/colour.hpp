#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/rational.hpp>

// Boost 1.74 rational recurses forever on `r == int` under C++20 rewritten
// comparisons (its operator== (T, rational) is chosen in reverse and calls
// itself). Non-template overloads win overload resolution and break the loop.
namespace boost {
#define SCMIX_RATIONAL_INT_EQ(I)                                                         \
  inline bool operator==(const rational<std::int64_t>& a, I b) {                        \
    return a.denominator() == 1 && a.numerator() == b;                                  \
  }                                                                                     \
  inline bool operator==(I b, const rational<std::int64_t>& a) { return a == b; }       \
  inline bool operator!=(const rational<std::int64_t>& a, I b) { return !(a == b); }    \
  inline bool operator!=(I b, const rational<std::int64_t>& a) { return !(a == b); }
SCMIX_RATIONAL_INT_EQ(int)
SCMIX_RATIONAL_INT_EQ(std::int64_t)
#undef SCMIX_RATIONAL_INT_EQ
}  // namespace boost

namespace scmix {

using Rational = boost::rational<std::int64_t>;

struct RgbColor {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  constexpr std::uint8_t operator[](int channel) const noexcept {
    return channel == 0 ? r : (channel == 1 ? g : b);
  }
  friend constexpr bool operator==(RgbColor, RgbColor) = default;
};

static_assert(sizeof(RgbColor) == 3, "RgbColor must be tightly packed");

struct Luma {
  std::uint8_t value = 0;
  friend constexpr bool operator==(Luma, Luma) = default;
};

struct RationalColor {
  Rational r;
  Rational g;
  Rational b;

  const Rational& operator[](int channel) const noexcept {
    return channel == 0 ? r : (channel == 1 ? g : b);
  }
  friend bool operator==(const RationalColor&, const RationalColor&) = default;
};

/// Black/white/hue split of a colour. The three weights sum to exactly one.
/// When hue_w is zero, full_hue holds the sentinel (255, 255, 255).
struct OstwaldWeights {
  Rational black_w;
  Rational white_w;
  Rational hue_w;
  RationalColor full_hue;

  friend bool operator==(const OstwaldWeights&, const OstwaldWeights&) = default;
};

/// Raised when a caller breaks a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Rounds a non-negative rational to the nearest integer, ties away from zero.
std::int64_t round_half_up(const Rational& x);

/// Rec.601 luma, round half up. Exact: floor((299r + 587g + 114b + 500) / 1000).
constexpr Luma luminance(RgbColor c) noexcept {
  const unsigned weighted = 299u * c.r + 587u * c.g + 114u * c.b + 500u;
  return Luma{static_cast<std::uint8_t>(weighted / 1000u)};
}

OstwaldWeights ostwald_decompose(RgbColor c);
RgbColor ostwald_recompose(const OstwaldWeights& w);

RgbColor round_color(const RationalColor& c);

/// Splits `total` units among `weights` (which must sum to exactly one) with the
/// largest-remainder method. Ties on the remainder go to the lowest index.
std::vector<int> largest_remainder_partition(int total, std::span<const Rational> weights);

}  // namespace scmix
