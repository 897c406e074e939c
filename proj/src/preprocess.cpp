#include "scmix/preprocess.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "scmix/kernels.hpp"

namespace scmix {
namespace {

struct Tap {
  int lo;
  int hi;
  double frac;
};

// Half-pixel-centered source taps for each destination index.
std::vector<Tap> bilinear_taps(int src, int dst) {
  std::vector<Tap> taps(static_cast<std::size_t>(dst));
  for (int i = 0; i < dst; ++i) {
    // ((2i + 1) * src - dst) / (2 * dst), numerator exact in double.
    double s = (static_cast<double>(2 * i + 1) * src - dst) / (2.0 * dst);
    if (s < 0) s = 0;
    int lo = static_cast<int>(std::floor(s));
    Tap t{lo, lo + 1, s - lo};
    if (lo >= src - 1) t = {src - 1, src - 1, 0.0};
    taps[static_cast<std::size_t>(i)] = t;
  }
  return taps;
}

std::uint8_t to_channel(double v) {
  const double r = std::floor(v + 0.5);
  return static_cast<std::uint8_t>(std::clamp(r, 0.0, 255.0));
}

int parse_positive(std::string_view text, std::string_view tag) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("bad preprocess tag: " + std::string(tag));
  }
  return value;
}

void validate(const PreprocessStep& step) {
  switch (step.kind) {
    case PreprocessStep::Kind::None: return;
    case PreprocessStep::Kind::DownUp:
      if (step.param < 1) throw std::invalid_argument("D/U factor must be >= 1");
      return;
    case PreprocessStep::Kind::BoxBlur:
      if (step.param < 1 || step.param % 2 == 0) throw std::invalid_argument("box blur kernel must be odd and >= 1");
      if (step.param > kMaxBlurKernel) throw std::invalid_argument("box blur kernel too large");
      return;
  }
}

}  // namespace

std::string PreprocessSpec::tag() const {
  std::string out;
  for (const auto& s : steps) {
    if (s.kind == PreprocessStep::Kind::None) continue;
    if (!out.empty()) out += '+';
    out += (s.kind == PreprocessStep::Kind::DownUp ? "du" : "blur") + std::to_string(s.param);
  }
  return out.empty() ? "none" : out;
}

PreprocessSpec PreprocessSpec::parse(std::string_view tag) {
  PreprocessSpec spec;
  if (tag == "none" || tag.empty()) return spec;
  std::size_t start = 0;
  while (start <= tag.size()) {
    const std::size_t end = std::min(tag.find('+', start), tag.size());
    const std::string_view part = tag.substr(start, end - start);
    PreprocessStep step;
    if (part.starts_with("du")) {
      step = {PreprocessStep::Kind::DownUp, parse_positive(part.substr(2), tag)};
    } else if (part.starts_with("blur")) {
      step = {PreprocessStep::Kind::BoxBlur, parse_positive(part.substr(4), tag)};
    } else {
      throw std::invalid_argument("bad preprocess tag: " + std::string(tag));
    }
    validate(step);
    spec.steps.push_back(step);
    start = end + 1;
  }
  return spec;
}

RgbImage resize_bilinear(const RgbImage& img, int width, int height) {
  if (width < 1 || height < 1) throw std::invalid_argument("resize target must be >= 1x1");
  if (width == img.width() && height == img.height()) return img;

  const auto xs = bilinear_taps(img.width(), width);
  const auto ys = bilinear_taps(img.height(), height);
  RgbImage out(width, height);
  for (int y = 0; y < height; ++y) {
    const Tap& ty = ys[static_cast<std::size_t>(y)];
    const auto top = img.row(ty.lo);
    const auto bottom = img.row(ty.hi);
    auto dst = out.row(y);
    for (int x = 0; x < width; ++x) {
      const Tap& tx = xs[static_cast<std::size_t>(x)];
      const RgbColor a = top[static_cast<std::size_t>(tx.lo)];
      const RgbColor b = top[static_cast<std::size_t>(tx.hi)];
      const RgbColor c = bottom[static_cast<std::size_t>(tx.lo)];
      const RgbColor d = bottom[static_cast<std::size_t>(tx.hi)];
      RgbColor px;
      std::uint8_t* channels[3] = {&px.r, &px.g, &px.b};
      for (int ch = 0; ch < 3; ++ch) {
        const double upper = (1.0 - tx.frac) * a[ch] + tx.frac * b[ch];
        const double lower = (1.0 - tx.frac) * c[ch] + tx.frac * d[ch];
        *channels[ch] = to_channel((1.0 - ty.frac) * upper + ty.frac * lower);
      }
      dst[static_cast<std::size_t>(x)] = px;
    }
  }
  return out;
}

RgbImage resize_canonical(const RgbImage& img) { return resize_bilinear(img, kCanonicalSize, kCanonicalSize); }

RgbImage downscale_area(const RgbImage& img, int factor) {
  if (factor < 1) throw std::invalid_argument("downscale factor must be >= 1");
  const int w = (img.width() + factor - 1) / factor;
  const int h = (img.height() + factor - 1) / factor;
  RgbImage out(w, h);
  for (int by = 0; by < h; ++by) {
    const int y0 = by * factor;
    const int y1 = std::min(y0 + factor, img.height());
    for (int bx = 0; bx < w; ++bx) {
      const int x0 = bx * factor;
      const int x1 = std::min(x0 + factor, img.width());
      std::uint64_t sum[3] = {0, 0, 0};
      for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) {
          const RgbColor c = img.at(x, y);
          sum[0] += c.r;
          sum[1] += c.g;
          sum[2] += c.b;
        }
      }
      const std::uint64_t n = static_cast<std::uint64_t>(x1 - x0) * static_cast<std::uint64_t>(y1 - y0);
      auto mean = [&](int ch) { return static_cast<std::uint8_t>((2 * sum[ch] + n) / (2 * n)); };
      out.at(bx, by) = {mean(0), mean(1), mean(2)};
    }
  }
  return out;
}

RgbImage down_up(const RgbImage& img, int factor) {
  if (factor < 1) throw std::invalid_argument("D/U factor must be >= 1");
  // A one-pixel axis is a 1-D signal and has nothing to downscale; every
  // longer axis must hold at least one full block.
  for (const int extent : {img.width(), img.height()}) {
    if (extent > 1 && factor > extent) {
      throw std::invalid_argument("D/U factor " + std::to_string(factor) + " exceeds image dimension " +
                                  std::to_string(extent));
    }
  }
  if (factor == 1) return img;
  return resize_bilinear(downscale_area(img, factor), img.width(), img.height());
}

RgbImage box_blur(const RgbImage& img, int kernel) {
  validate({PreprocessStep::Kind::BoxBlur, kernel});
  if (kernel == 1) return img;

  const auto& k = kernels::active();
  const int r = kernel / 2;
  const int w = img.width();
  const int h = img.height();
  const std::size_t n = static_cast<std::size_t>(w) * 3;
  const std::size_t padded = static_cast<std::size_t>(w + 2 * r) * 3;
  auto row_bytes = [&](int y) { return img.bytes() + static_cast<std::size_t>(std::clamp(y, 0, h - 1)) * n; };

  std::vector<std::uint32_t> column_sums(n, 0);
  for (int dy = -r; dy <= r; ++dy) k.accumulate_u8(column_sums.data(), row_bytes(dy), n);

  std::vector<std::uint32_t> prefix(padded + 3, 0);
  RgbImage out(w, h);
  for (int y = 0; y < h; ++y) {
    // Prefix sums over the horizontally replicated row, per interleaved channel.
    for (std::size_t j = 0; j < padded; ++j) {
      const int px = std::clamp(static_cast<int>(j / 3) - r, 0, w - 1);
      prefix[j + 3] = prefix[j] + column_sums[static_cast<std::size_t>(px) * 3 + j % 3];
    }
    k.box_normalize(prefix.data() + static_cast<std::size_t>(kernel) * 3, prefix.data(),
                    out.bytes() + static_cast<std::size_t>(y) * n, n,
                    static_cast<std::uint32_t>(kernel) * static_cast<std::uint32_t>(kernel));
    if (y + 1 < h) {
      k.accumulate_u8(column_sums.data(), row_bytes(y + r + 1), n);
      k.subtract_u8(column_sums.data(), row_bytes(y - r), n);
    }
  }
  return out;
}

RgbImage apply_preprocess(const PreprocessSpec& spec, const RgbImage& img) {
  RgbImage out = img;
  for (const auto& step : spec.steps) {
    validate(step);
    switch (step.kind) {
      case PreprocessStep::Kind::None: break;
      case PreprocessStep::Kind::DownUp: out = down_up(out, step.param); break;
      case PreprocessStep::Kind::BoxBlur: out = box_blur(out, step.param); break;
    }
  }
  return out;
}

}  // namespace scmix
