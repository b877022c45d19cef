// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include <cmath>

#include "tables.hpp"

namespace wiso::kernels::avx2 {

namespace {

// Fixed-order horizontal reduction: (l0 + l2) + (l1 + l3).
inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void gradient_sq_row(const double* below, const double* row, const double* above, std::size_t n, double sx, double sy,
                     double* out) {
  {
    const double gx = (row[1] - row[0]) * (2.0 * sx);
    const double gy = (above[0] - below[0]) * sy;
    out[0] = gx * gx + gy * gy;
  }
  const __m256d vsx = _mm256_set1_pd(sx);
  const __m256d vsy = _mm256_set1_pd(sy);
  std::size_t i = 1;
  for (; i + 4 < n; i += 4) {
    const __m256d gx = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(row + i + 1), _mm256_loadu_pd(row + i - 1)), vsx);
    const __m256d gy = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(above + i), _mm256_loadu_pd(below + i)), vsy);
    _mm256_storeu_pd(out + i, _mm256_fmadd_pd(gx, gx, _mm256_mul_pd(gy, gy)));
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
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, op(_mm256_loadu_pd(v + i)));
    acc1 = _mm256_add_pd(acc1, op(_mm256_loadu_pd(v + i + 4)));
  }
  for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, op(_mm256_loadu_pd(v + i)));
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += _mm_cvtsd_f64(_mm256_castpd256_pd128(op(_mm256_set1_pd(v[i]))));
  return s;
}

double sum(const double* v, std::size_t n) {
  return reduce(v, n, [](__m256d x) { return x; });
}

double sum_sqrt(const double* v, std::size_t n) {
  return reduce(v, n, [](__m256d x) { return _mm256_sqrt_pd(x); });
}

double sum_squares(const double* v, std::size_t n) {
  return reduce(v, n, [](__m256d x) { return _mm256_mul_pd(x, x); });
}

double sum_abs(const double* v, std::size_t n) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  return reduce(v, n, [mask](__m256d x) { return _mm256_and_pd(x, mask); });
}

}  // namespace

const KernelTable kTable{Isa::Avx2, gradient_sq_row, sum, sum_sqrt, sum_squares, sum_abs};

}  // namespace wiso::kernels::avx2
