#pragma once

// Data-parallel inner loops behind the image operations. Every kernel has a
// scalar reference and optional SIMD variants; variants must produce results
// bit-identical to the scalar reference for the same inputs.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace scmix::kernels {

struct KernelTable {
  const char* name;

  // out[i] = luminance of the i-th interleaved rgb triple.
  void (*luma_row)(const std::uint8_t* rgb, std::uint8_t* out, std::size_t pixels);

  // acc[i] += src[i] / acc[i] -= src[i], modulo 2^32.
  void (*accumulate_u8)(std::uint32_t* acc, const std::uint8_t* src, std::size_t n);
  void (*subtract_u8)(std::uint32_t* acc, const std::uint8_t* src, std::size_t n);

  // out[i] = round_half_up((hi[i] - lo[i]) / area). Difference taken modulo 2^32
  // and must be below 2^31.
  void (*box_normalize)(const std::uint32_t* hi, const std::uint32_t* lo, std::uint8_t* out, std::size_t n,
                        std::uint32_t area);

  // out[i] = sum_k weights[k] * rows[k][i], accumulated in ascending k.
  void (*weighted_rows)(const double* const* rows, const double* weights, std::size_t taps, double* out,
                        std::size_t n);

  // out[i] = sum_k weights[k] * in[i + k], accumulated in ascending k.
  void (*weighted_taps)(const double* in, const double* weights, std::size_t taps, double* out, std::size_t n);

  // Per-pixel SSIM from filtered moments (E[x], E[y], E[x^2], E[y^2], E[xy]).
  void (*ssim_map)(const double* mu_x, const double* mu_y, const double* xx, const double* yy, const double* xy,
                   double* out, std::size_t n, double c1, double c2);
};

const KernelTable& scalar_kernels();

/// Null when the build or the running CPU lacks AVX2.
const KernelTable* avx2_kernels();

/// Every table usable on this machine, scalar first.
std::vector<const KernelTable*> available_kernels();

/// Table used by the library. Picks the widest supported variant at first use;
/// the SCMIX_KERNELS environment variable ("scalar", "avx2") overrides.
const KernelTable& active();

/// Forces a table by name for the rest of the process; returns false if unknown
/// or unsupported.
bool select(std::string_view name);

}  // namespace scmix::kernels
