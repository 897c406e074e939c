#pragma once

#include "scmix/kernels.hpp"

namespace scmix::kernels {

// Shared by the scalar kernel and the SIMD tails so every path evaluates the
// same expression tree.
inline double ssim_pixel(double mu_x, double mu_y, double xx, double yy, double xy, double c1, double c2) {
  const double mu_xy = mu_x * mu_y;
  const double mu_xx = mu_x * mu_x;
  const double mu_yy = mu_y * mu_y;
  const double var_x = xx - mu_xx;
  const double var_y = yy - mu_yy;
  const double cov = xy - mu_xy;
  const double num = (2.0 * mu_xy + c1) * (2.0 * cov + c2);
  const double den = (mu_xx + mu_yy + c1) * (var_x + var_y + c2);
  return num / den;
}

#if defined(SCMIX_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace scmix::kernels
