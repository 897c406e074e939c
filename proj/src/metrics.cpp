#include "scmix/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "scmix/kernels.hpp"

namespace scmix {

std::vector<double> gaussian_taps(int window, double sigma) {
  if (window < 1 || window % 2 == 0) throw std::invalid_argument("SSIM window must be odd and >= 1");
  const int r = window / 2;
  std::vector<double> taps(static_cast<std::size_t>(window));
  double total = 0;
  for (int i = 0; i < window; ++i) {
    const double d = i - r;
    taps[static_cast<std::size_t>(i)] = std::exp(-(d * d) / (2.0 * sigma * sigma));
    total += taps[static_cast<std::size_t>(i)];
  }
  for (double& t : taps) t /= total;
  return taps;
}

double ssim(const GrayPlane& a, const GrayPlane& b, const SsimParams& params) {
  if (a.width != b.width || a.height != b.height) {
    throw std::invalid_argument("ssim: image dimensions differ (" + std::to_string(a.width) + "x" +
                                std::to_string(a.height) + " vs " + std::to_string(b.width) + "x" +
                                std::to_string(b.height) + ")");
  }
  if (a.width < params.window || a.height < params.window) {
    throw std::invalid_argument("ssim: image smaller than the " + std::to_string(params.window) + "x" +
                                std::to_string(params.window) + " window");
  }

  const auto& k = kernels::active();
  const std::vector<double> taps = gaussian_taps(params.window, params.sigma);
  const std::size_t win = taps.size();
  const std::size_t w = static_cast<std::size_t>(a.width);
  const std::size_t h = static_cast<std::size_t>(a.height);
  const std::size_t out_w = w - win + 1;
  const std::size_t out_h = h - win + 1;

  // Moment planes: x, y, x^2, y^2, xy.
  std::array<std::vector<double>, 5> planes;
  for (auto& p : planes) p.resize(w * h);
  for (std::size_t i = 0; i < w * h; ++i) {
    const double x = a.values[i];
    const double y = b.values[i];
    planes[0][i] = x;
    planes[1][i] = y;
    planes[2][i] = x * x;
    planes[3][i] = y * y;
    planes[4][i] = x * y;
  }

  const double c1 = (params.k1 * params.dynamic_range) * (params.k1 * params.dynamic_range);
  const double c2 = (params.k2 * params.dynamic_range) * (params.k2 * params.dynamic_range);

  std::vector<double> column(w);
  std::array<std::vector<double>, 5> filtered;
  for (auto& f : filtered) f.resize(out_w);
  std::vector<double> map(out_w);
  std::vector<const double*> rows(win);

  double total = 0;
  for (std::size_t oy = 0; oy < out_h; ++oy) {
    for (std::size_t p = 0; p < planes.size(); ++p) {
      for (std::size_t t = 0; t < win; ++t) rows[t] = planes[p].data() + (oy + t) * w;
      k.weighted_rows(rows.data(), taps.data(), win, column.data(), w);
      k.weighted_taps(column.data(), taps.data(), win, filtered[p].data(), out_w);
    }
    k.ssim_map(filtered[0].data(), filtered[1].data(), filtered[2].data(), filtered[3].data(), filtered[4].data(),
               map.data(), out_w, c1, c2);
    for (const double v : map) total += v;
  }
  return total / static_cast<double>(out_w * out_h);
}

double ssim(const RgbImage& a, const RgbImage& b, const SsimParams& params) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw std::invalid_argument("ssim: image dimensions differ");
  }
  return ssim(luma_plane(a), luma_plane(b), params);
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) throw std::invalid_argument("pearson: length mismatch");
  const double n = static_cast<double>(x.size());
  double mx = 0;
  double my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0;
  double sxx = 0;
  double syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) return std::equal(x.begin(), x.end(), y.begin()) ? 1.0 : 0.0;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double histogram_correlation(const RgbImage& a, const RgbImage& b) {
  std::array<std::array<double, 256>, 3> ha{};
  std::array<std::array<double, 256>, 3> hb{};
  for (const RgbColor c : a.pixels()) {
    ha[0][c.r] += 1;
    ha[1][c.g] += 1;
    ha[2][c.b] += 1;
  }
  for (const RgbColor c : b.pixels()) {
    hb[0][c.r] += 1;
    hb[1][c.g] += 1;
    hb[2][c.b] += 1;
  }
  double sum = 0;
  for (int ch = 0; ch < 3; ++ch) sum += pearson(ha[static_cast<std::size_t>(ch)], hb[static_cast<std::size_t>(ch)]);
  return sum / 3.0;
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("cosine: dimension mismatch (" + std::to_string(u.size()) + " vs " +
                                std::to_string(v.size()) + ")");
  }
  double dot = 0;
  double uu = 0;
  double vv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0 || vv == 0) throw std::invalid_argument("cosine: zero vector");
  return std::clamp(dot / std::sqrt(uu * vv), -1.0, 1.0);
}

}  // namespace scmix
