#include "scmix/colour.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace scmix {

std::int64_t round_half_up(const Rational& x) {
  // floor(x + 1/2) = floor((2n + d) / 2d) for d > 0.
  const std::int64_t n = x.numerator();
  const std::int64_t d = x.denominator();
  const std::int64_t num = 2 * n + d;
  const std::int64_t den = 2 * d;
  std::int64_t q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

RgbColor round_color(const RationalColor& c) {
  auto channel = [](const Rational& v) {
    return static_cast<std::uint8_t>(std::clamp<std::int64_t>(round_half_up(v), 0, 255));
  };
  return {channel(c.r), channel(c.g), channel(c.b)};
}

OstwaldWeights ostwald_decompose(RgbColor c) {
  const int lo = std::min({c.r, c.g, c.b});
  const int hi = std::max({c.r, c.g, c.b});

  OstwaldWeights w;
  w.white_w = Rational(lo, 255);
  w.black_w = Rational(255 - hi, 255);
  w.hue_w = Rational(hi - lo, 255);
  if (hi == lo) {
    w.full_hue = {Rational(255), Rational(255), Rational(255)};
    return w;
  }
  const int span = hi - lo;
  auto stretch = [&](int x) { return Rational((x - lo) * 255, span); };
  w.full_hue = {stretch(c.r), stretch(c.g), stretch(c.b)};
  return w;
}

RgbColor ostwald_recompose(const OstwaldWeights& w) {
  auto channel = [&](int ch) {
    Rational v = w.white_w * 255;
    if (w.hue_w != 0) v += w.hue_w * w.full_hue[ch];
    return static_cast<std::uint8_t>(std::clamp<std::int64_t>(round_half_up(v), 0, 255));
  };
  return {channel(0), channel(1), channel(2)};
}

std::vector<int> largest_remainder_partition(int total, std::span<const Rational> weights) {
  if (total < 1) throw ContractViolation("partition total must be >= 1, got " + std::to_string(total));
  if (weights.empty()) throw ContractViolation("partition needs at least one weight");

  Rational sum(0);
  for (const auto& w : weights) {
    if (w < 0) throw ContractViolation("partition weights must be non-negative");
    sum += w;
  }
  if (sum != 1) throw ContractViolation("partition weights must sum to exactly 1");

  const std::size_t n = weights.size();
  std::vector<int> parts(n);
  std::vector<Rational> remainders(n);
  int assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational exact = weights[i] * total;
    const std::int64_t whole = exact.numerator() / exact.denominator();
    parts[i] = static_cast<int>(whole);
    remainders[i] = exact - whole;
    assigned += parts[i];
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });

  for (int k = 0; k < total - assigned; ++k) ++parts[order[static_cast<std::size_t>(k)]];
  return parts;
}

}  // namespace scmix
