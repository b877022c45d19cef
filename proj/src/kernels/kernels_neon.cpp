// AArch64 Advanced SIMD variant (two doubles per register).
#include <arm_neon.h>

#include <cmath>

#include "tables.hpp"

namespace wiso::kernels::neon {

namespace {

void gradient_sq_row(const double* below, const double* row, const double* above, std::size_t n, double sx, double sy,
                     double* out) {
  {
    const double gx = (row[1] - row[0]) * (2.0 * sx);
    const double gy = (above[0] - below[0]) * sy;
    out[0] = gx * gx + gy * gy;
  }
  const float64x2_t vsx = vdupq_n_f64(sx);
  const float64x2_t vsy = vdupq_n_f64(sy);
  std::size_t i = 1;
  for (; i + 2 < n; i += 2) {
    const float64x2_t gx = vmulq_f64(vsubq_f64(vld1q_f64(row + i + 1), vld1q_f64(row + i - 1)), vsx);
    const float64x2_t gy = vmulq_f64(vsubq_f64(vld1q_f64(above + i), vld1q_f64(below + i)), vsy);
    vst1q_f64(out + i, vfmaq_f64(vmulq_f64(gy, gy), gx, gx));
  }
  for (; i + 1 < n; ++i) {
    const double gx = (row[i + 1] - row[i - 1]) * sx;
    const double gy = (above[i] - below[i]) * sy;
    out[i] = gx * gx + gy * gy;
  }
  if (n > 1) {
    const double gx = (row[n - 1] - row[n - 2]) * (2.0 * sx);
    const double gy = (above[n - 1] - below[n - 1]) * sy;
    out[n - 1] = gx * gx + gy * gy;
  }
}

template <class Op>
double reduce(const double* v, std::size_t n, Op op) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vaddq_f64(acc0, op(vld1q_f64(v + i)));
    acc1 = vaddq_f64(acc1, op(vld1q_f64(v + i + 2)));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += vgetq_lane_f64(op(vdupq_n_f64(v[i])), 0);
  return s;
}

double sum(const double* v, std::size_t n) {
  return reduce(v, n, [](float64x2_t x) { return x; });
}

double sum_sqrt(const double* v, std::size_t n) {
  return reduce(v, n, [](float64x2_t x) { return vsqrtq_f64(x); });
}

double sum_squares(const double* v, std::size_t n) {
  return reduce(v, n, [](float64x2_t x) { return vmulq_f64(x, x); });
}

double sum_abs(const double* v, std::size_t n) {
  return reduce(v, n, [](float64x2_t x) { return vabsq_f64(x); });
}

}  // namespace

const KernelTable kTable{Isa::Neon, gradient_sq_row, sum, sum_sqrt, sum_squares, sum_abs};

}  // namespace wiso::kernels::neon
