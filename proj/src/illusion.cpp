#include "scmix/illusion.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace scmix {
namespace {

constexpr RgbColor kBlack{0, 0, 0};
constexpr RgbColor kWhite{255, 255, 255};

void require_degree(int degree) {
  if (degree < 2) throw ContractViolation("transform degree must be >= 2, got " + std::to_string(degree));
}

struct ChannelSums {
  std::int64_t r = 0;
  std::int64_t g = 0;
  std::int64_t b = 0;
  std::int64_t count = 0;

  RationalColor mean() const { return {Rational(r, count), Rational(g, count), Rational(b, count)}; }
};

ChannelSums sum_region(const RgbImage& img, int x0, int y0, int w, int h) {
  ChannelSums s;
  for (int y = y0; y < y0 + h; ++y) {
    for (const RgbColor c : img.row(y).subspan(static_cast<std::size_t>(x0), static_cast<std::size_t>(w))) {
      s.r += c.r;
      s.g += c.g;
      s.b += c.b;
    }
  }
  s.count = static_cast<std::int64_t>(w) * h;
  return s;
}

RgbImage greyscale(const RgbImage& img) {
  const GrayPlane luma = luma_plane(img);
  RgbImage out(img.width(), img.height());
  auto px = out.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    const std::uint8_t l = luma.values[i];
    px[i] = {l, l, l};
  }
  return out;
}

// Calls fn(x0, y0, w, h) for each degree x degree block, clipping at the edges.
template <typename Fn>
void for_each_block(const RgbImage& img, int degree, Fn&& fn) {
  for (int y0 = 0; y0 < img.height(); y0 += degree) {
    const int h = std::min(degree, img.height() - y0);
    for (int x0 = 0; x0 < img.width(); x0 += degree) {
      fn(x0, y0, std::min(degree, img.width() - x0), h);
    }
  }
}

void fill_rect(RgbImage& img, int x0, int y0, int w, int h, RgbColor c) {
  for (int y = y0; y < y0 + h; ++y) {
    auto row = img.row(y);
    std::fill_n(row.begin() + x0, w, c);
  }
}

// Column stripes masked onto the luminance. pattern[s % N] picks which channels carry L.
template <std::size_t N>
RgbImage masked_stripes(const RgbImage& img, int degree, const std::array<std::array<bool, 3>, N>& pattern) {
  require_degree(degree);
  const GrayPlane luma = luma_plane(img);
  RgbImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    auto row = out.row(y);
    for (int x = 0; x < img.width(); ++x) {
      const auto& mask = pattern[static_cast<std::size_t>(x / degree) % N];
      const std::uint8_t l = luma.at(x, y);
      row[static_cast<std::size_t>(x)] = {mask[0] ? l : std::uint8_t{0}, mask[1] ? l : std::uint8_t{0},
                                          mask[2] ? l : std::uint8_t{0}};
    }
  }
  return out;
}

// Splits the chroma stripe of each patch top to bottom into segments with heights
// proportional to `weights_of(sums)` and fills them with `fills`.
template <std::size_t N, typename WeightFn>
RgbImage proportional_segments(const RgbImage& img, int degree, const std::array<RgbColor, N>& fills,
                               WeightFn&& weights_of) {
  require_degree(degree);
  RgbImage out = greyscale(img);
  for_each_block(img, degree, [&](int x0, int y0, int w, int h) {
    const ChannelSums sums = sum_region(img, x0, y0, w, h);
    const std::array<std::int64_t, N> raw = weights_of(sums);
    std::int64_t total = 0;
    for (const std::int64_t v : raw) total += v;
    if (total == 0) return;

    std::array<Rational, N> weights;
    for (std::size_t i = 0; i < N; ++i) weights[i] = Rational(raw[i], total);
    const std::vector<int> heights = largest_remainder_partition(h, weights);

    const StripeSpan stripe = chroma_stripe(w, degree);
    int y = y0;
    for (std::size_t i = 0; i < N; ++i) {
      fill_rect(out, x0 + stripe.offset, y, stripe.width, heights[i], fills[i]);
      y += heights[i];
    }
  });
  return out;
}

// Writes black/white/hue runs of `width` pixels starting at row[x0].
void render_ostwald_runs(std::span<RgbColor> row, int x0, int width, const RationalColor& mean, bool white_first) {
  const OstwaldWeights w = ostwald_decompose(round_color(mean));
  const std::array<Rational, 3> weights{w.black_w, w.white_w, w.hue_w};
  const std::vector<int> runs = largest_remainder_partition(width, weights);
  const RgbColor hue = round_color(w.full_hue);

  auto it = row.begin() + x0;
  auto emit = [&](int n, RgbColor c) {
    it = std::fill_n(it, n, c);
  };
  if (white_first) {
    emit(runs[1], kWhite);
    emit(runs[0], kBlack);
  } else {
    emit(runs[0], kBlack);
    emit(runs[1], kWhite);
  }
  emit(runs[2], hue);
}

RgbImage ostwald_blocks(const RgbImage& img, int degree, const std::uint64_t* seed) {
  require_degree(degree);
  RgbImage out(img.width(), img.height());
  for_each_block(img, degree, [&](int x0, int y0, int w, int h) {
    const RationalColor mean = sum_region(img, x0, y0, w, h).mean();
    const bool swap = seed != nullptr && ostwald_random_swaps(*seed, static_cast<std::uint64_t>(y0 / degree),
                                                              static_cast<std::uint64_t>(x0 / degree));
    render_ostwald_runs(out.row(y0), x0, w, mean, swap);
    for (int y = y0 + 1; y < y0 + h; ++y) {
      const auto first = out.row(y0).subspan(static_cast<std::size_t>(x0), static_cast<std::size_t>(w));
      std::copy(first.begin(), first.end(), out.row(y).begin() + x0);
    }
  });
  return out;
}

constexpr std::array<std::string_view, 8> kNames = {
    "scmix1", "scmix2", "scmix3a", "scmix3b", "scmix6", "ostwald_rgb", "ostwald_checker", "ostwald_random",
};

}  // namespace

std::string_view variant_name(IllusionVariant v) { return kNames[static_cast<std::size_t>(v)]; }

std::optional<IllusionVariant> parse_variant(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return kAllVariants[i];
  }
  return std::nullopt;
}

StripeSpan chroma_stripe(int patch_width, int degree) {
  const int width = std::min((degree + 1) / 2, patch_width);
  return {(patch_width - width) / 2, width};
}

RgbImage scmix_3a(const RgbImage& img, int degree) {
  static constexpr std::array<std::array<bool, 3>, 3> kPattern{{{true, false, false},
                                                                 {false, true, false},
                                                                 {false, false, true}}};
  return masked_stripes(img, degree, kPattern);
}

RgbImage scmix_2(const RgbImage& img, int degree) {
  static constexpr std::array<std::array<bool, 3>, 2> kPattern{{{true, true, false}, {false, false, true}}};
  return masked_stripes(img, degree, kPattern);
}

RgbImage scmix_1(const RgbImage& img, int degree) {
  require_degree(degree);
  RgbImage out = greyscale(img);
  for_each_block(img, degree, [&](int x0, int y0, int w, int h) {
    const RgbColor mean = round_color(sum_region(img, x0, y0, w, h).mean());
    const StripeSpan stripe = chroma_stripe(w, degree);
    fill_rect(out, x0 + stripe.offset, y0, stripe.width, h, mean);
  });
  return out;
}

RgbImage scmix_3b(const RgbImage& img, int degree) {
  static constexpr std::array<RgbColor, 3> kFills{{{255, 0, 0}, {0, 255, 0}, {0, 0, 255}}};
  return proportional_segments(img, degree, kFills, [](const ChannelSums& s) {
    return std::array<std::int64_t, 3>{s.r, s.g, s.b};
  });
}

RgbImage scmix_6(const RgbImage& img, int degree) {
  static constexpr std::array<RgbColor, 6> kFills{
      {{255, 0, 0}, {0, 255, 0}, {0, 0, 255}, {0, 255, 255}, {255, 255, 0}, {255, 0, 255}}};
  return proportional_segments(img, degree, kFills, [](const ChannelSums& s) {
    return std::array<std::int64_t, 6>{s.r, s.g, s.b, std::min(s.g, s.b), std::min(s.r, s.g), std::min(s.r, s.b)};
  });
}

RgbImage ostwald_rgb(const RgbImage& img, int degree) {
  require_degree(degree);
  RgbImage out(img.width(), img.height());
  const int group = 3 * degree;
  for (int y = 0; y < img.height(); ++y) {
    for (int x0 = 0; x0 < img.width(); x0 += group) {
      const int w = std::min(group, img.width() - x0);
      const RationalColor mean = sum_region(img, x0, y, w, 1).mean();
      render_ostwald_runs(out.row(y), x0, w, mean, false);
    }
  }
  return out;
}

RgbImage ostwald_checker(const RgbImage& img, int degree) { return ostwald_blocks(img, degree, nullptr); }

RgbImage ostwald_random(const RgbImage& img, int degree, std::uint64_t seed) {
  return ostwald_blocks(img, degree, &seed);
}

RgbImage apply(const DistortionSpec& spec, const RgbImage& img) {
  if (spec.degree < 1) throw ContractViolation("degree must be >= 1, got " + std::to_string(spec.degree));
  if (spec.degree == 1) return img;
  switch (spec.variant) {
    case IllusionVariant::SCMix1: return scmix_1(img, spec.degree);
    case IllusionVariant::SCMix2: return scmix_2(img, spec.degree);
    case IllusionVariant::SCMix3A: return scmix_3a(img, spec.degree);
    case IllusionVariant::SCMix3B: return scmix_3b(img, spec.degree);
    case IllusionVariant::SCMix6: return scmix_6(img, spec.degree);
    case IllusionVariant::OstwaldRGB: return ostwald_rgb(img, spec.degree);
    case IllusionVariant::OstwaldChecker: return ostwald_checker(img, spec.degree);
    case IllusionVariant::OstwaldRandom: return ostwald_random(img, spec.degree, spec.seed);
  }
  throw ContractViolation("unknown illusion variant");
}

}  // namespace scmix
