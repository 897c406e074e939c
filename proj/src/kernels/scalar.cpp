#include "kernels_internal.hpp"

#include "scmix/colour.hpp"

namespace scmix::kernels {
namespace {

void luma_row(const std::uint8_t* rgb, std::uint8_t* out, std::size_t pixels) {
  for (std::size_t i = 0; i < pixels; ++i) {
    out[i] = luminance({rgb[3 * i], rgb[3 * i + 1], rgb[3 * i + 2]}).value;
  }
}

void accumulate_u8(std::uint32_t* acc, const std::uint8_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += src[i];
}

void subtract_u8(std::uint32_t* acc, const std::uint8_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] -= src[i];
}

void box_normalize(const std::uint32_t* hi, const std::uint32_t* lo, std::uint8_t* out, std::size_t n,
                   std::uint32_t area) {
  const std::uint64_t den = 2ull * area;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t sum = hi[i] - lo[i];
    out[i] = static_cast<std::uint8_t>((2 * sum + area) / den);
  }
}

void weighted_rows(const double* const* rows, const double* weights, std::size_t taps, double* out,
                   std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double acc = weights[0] * rows[0][i];
    for (std::size_t k = 1; k < taps; ++k) acc = acc + weights[k] * rows[k][i];
    out[i] = acc;
  }
}

void weighted_taps(const double* in, const double* weights, std::size_t taps, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double acc = weights[0] * in[i];
    for (std::size_t k = 1; k < taps; ++k) acc = acc + weights[k] * in[i + k];
    out[i] = acc;
  }
}

void ssim_map(const double* mu_x, const double* mu_y, const double* xx, const double* yy, const double* xy,
              double* out, std::size_t n, double c1, double c2) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = ssim_pixel(mu_x[i], mu_y[i], xx[i], yy[i], xy[i], c1, c2);
  }
}

constexpr KernelTable kScalar{
    "scalar", luma_row, accumulate_u8, subtract_u8, box_normalize, weighted_rows, weighted_taps, ssim_map,
};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace scmix::kernels
