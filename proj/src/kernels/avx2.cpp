#include "kernels_internal.hpp"

#if defined(SCMIX_HAVE_AVX2)

#include <immintrin.h>

#include "scmix/colour.hpp"

#define SCMIX_AVX2 __attribute__((target("avx2")))

namespace scmix::kernels {
namespace {

SCMIX_AVX2 void luma_row(const std::uint8_t* rgb, std::uint8_t* out, std::size_t pixels) {
  const __m256i offsets = _mm256_setr_epi32(0, 3, 6, 9, 12, 15, 18, 21);
  const __m256i byte_mask = _mm256_set1_epi32(0xFF);
  const __m256i wr = _mm256_set1_epi32(299);
  const __m256i wg = _mm256_set1_epi32(587);
  const __m256i wb = _mm256_set1_epi32(114);
  const __m256i bias = _mm256_set1_epi32(500);
  const __m256 thousand = _mm256_set1_ps(1000.0f);

  std::size_t i = 0;
  // Each gather reads four bytes per pixel, so keep one pixel of slack.
  for (; i + 9 <= pixels; i += 8) {
    const __m256i v = _mm256_i32gather_epi32(reinterpret_cast<const int*>(rgb + 3 * i), offsets, 1);
    const __m256i r = _mm256_and_si256(v, byte_mask);
    const __m256i g = _mm256_and_si256(_mm256_srli_epi32(v, 8), byte_mask);
    const __m256i b = _mm256_and_si256(_mm256_srli_epi32(v, 16), byte_mask);
    __m256i s = _mm256_add_epi32(_mm256_mullo_epi32(r, wr), _mm256_mullo_epi32(g, wg));
    s = _mm256_add_epi32(s, _mm256_mullo_epi32(b, wb));
    s = _mm256_add_epi32(s, bias);
    // s < 2^24, so the float quotient is exact enough that truncation is floor.
    const __m256i q = _mm256_cvttps_epi32(_mm256_div_ps(_mm256_cvtepi32_ps(s), thousand));
    alignas(32) std::int32_t lanes[8];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), q);
    for (int k = 0; k < 8; ++k) out[i + static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(lanes[k]);
  }
  for (; i < pixels; ++i) {
    out[i] = luminance({rgb[3 * i], rgb[3 * i + 1], rgb[3 * i + 2]}).value;
  }
}

SCMIX_AVX2 void accumulate_u8(std::uint32_t* acc, const std::uint8_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i wide = _mm256_cvtepu8_epi32(_mm_loadl_epi64(reinterpret_cast<const __m128i*>(src + i)));
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + i), _mm256_add_epi32(a, wide));
  }
  for (; i < n; ++i) acc[i] += src[i];
}

SCMIX_AVX2 void subtract_u8(std::uint32_t* acc, const std::uint8_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i wide = _mm256_cvtepu8_epi32(_mm_loadl_epi64(reinterpret_cast<const __m128i*>(src + i)));
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + i), _mm256_sub_epi32(a, wide));
  }
  for (; i < n; ++i) acc[i] -= src[i];
}

SCMIX_AVX2 void box_normalize(const std::uint32_t* hi, const std::uint32_t* lo, std::uint8_t* out, std::size_t n,
                              std::uint32_t area) {
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d area_v = _mm256_set1_pd(static_cast<double>(area));
  const __m256d den = _mm256_set1_pd(2.0 * static_cast<double>(area));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i d = _mm256_sub_epi32(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(hi + i)),
                                       _mm256_loadu_si256(reinterpret_cast<const __m256i*>(lo + i)));
    alignas(16) std::int32_t lanes[8];
    for (int half = 0; half < 2; ++half) {
      const __m128i part = half == 0 ? _mm256_castsi256_si128(d) : _mm256_extracti128_si256(d, 1);
      const __m256d num = _mm256_add_pd(_mm256_mul_pd(two, _mm256_cvtepi32_pd(part)), area_v);
      const __m128i q = _mm256_cvttpd_epi32(_mm256_div_pd(num, den));
      _mm_store_si128(reinterpret_cast<__m128i*>(lanes + 4 * half), q);
    }
    for (int k = 0; k < 8; ++k) out[i + static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(lanes[k]);
  }
  const std::uint64_t den_i = 2ull * area;
  for (; i < n; ++i) {
    const std::uint64_t sum = hi[i] - lo[i];
    out[i] = static_cast<std::uint8_t>((2 * sum + area) / den_i);
  }
}

SCMIX_AVX2 void weighted_rows(const double* const* rows, const double* weights, std::size_t taps, double* out,
                              std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d acc = _mm256_mul_pd(_mm256_set1_pd(weights[0]), _mm256_loadu_pd(rows[0] + i));
    for (std::size_t k = 1; k < taps; ++k) {
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(weights[k]), _mm256_loadu_pd(rows[k] + i)));
    }
    _mm256_storeu_pd(out + i, acc);
  }
  for (; i < n; ++i) {
    double acc = weights[0] * rows[0][i];
    for (std::size_t k = 1; k < taps; ++k) acc = acc + weights[k] * rows[k][i];
    out[i] = acc;
  }
}

SCMIX_AVX2 void weighted_taps(const double* in, const double* weights, std::size_t taps, double* out,
                              std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d acc = _mm256_mul_pd(_mm256_set1_pd(weights[0]), _mm256_loadu_pd(in + i));
    for (std::size_t k = 1; k < taps; ++k) {
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(weights[k]), _mm256_loadu_pd(in + i + k)));
    }
    _mm256_storeu_pd(out + i, acc);
  }
  for (; i < n; ++i) {
    double acc = weights[0] * in[i];
    for (std::size_t k = 1; k < taps; ++k) acc = acc + weights[k] * in[i + k];
    out[i] = acc;
  }
}

SCMIX_AVX2 void ssim_map(const double* mu_x, const double* mu_y, const double* xx, const double* yy,
                         const double* xy, double* out, std::size_t n, double c1, double c2) {
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d k1 = _mm256_set1_pd(c1);
  const __m256d k2 = _mm256_set1_pd(c2);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d mx = _mm256_loadu_pd(mu_x + i);
    const __m256d my = _mm256_loadu_pd(mu_y + i);
    const __m256d mu_xy = _mm256_mul_pd(mx, my);
    const __m256d mu_xx = _mm256_mul_pd(mx, mx);
    const __m256d mu_yy = _mm256_mul_pd(my, my);
    const __m256d var_x = _mm256_sub_pd(_mm256_loadu_pd(xx + i), mu_xx);
    const __m256d var_y = _mm256_sub_pd(_mm256_loadu_pd(yy + i), mu_yy);
    const __m256d cov = _mm256_sub_pd(_mm256_loadu_pd(xy + i), mu_xy);
    const __m256d num = _mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(two, mu_xy), k1),
                                      _mm256_add_pd(_mm256_mul_pd(two, cov), k2));
    const __m256d den = _mm256_mul_pd(_mm256_add_pd(_mm256_add_pd(mu_xx, mu_yy), k1),
                                      _mm256_add_pd(_mm256_add_pd(var_x, var_y), k2));
    _mm256_storeu_pd(out + i, _mm256_div_pd(num, den));
  }
  for (; i < n; ++i) out[i] = ssim_pixel(mu_x[i], mu_y[i], xx[i], yy[i], xy[i], c1, c2);
}

constexpr KernelTable kAvx2{
    "avx2", luma_row, accumulate_u8, subtract_u8, box_normalize, weighted_rows, weighted_taps, ssim_map,
};

}  // namespace

const KernelTable& avx2_table() { return kAvx2; }

}  // namespace scmix::kernels

#endif  // SCMIX_HAVE_AVX2
