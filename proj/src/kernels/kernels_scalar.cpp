#include <cmath>

#include "tables.hpp"

namespace wiso::kernels::scalar {

namespace {

void gradient_sq_row(const double* below, const double* row, const double* above, std::size_t n, double sx, double sy,
                     double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    double gx;
    if (i == 0) gx = (row[1] - row[0]) * (2.0 * sx);
    else if (i + 1 == n) gx = (row[n - 1] - row[n - 2]) * (2.0 * sx);
    else gx = (row[i + 1] - row[i - 1]) * sx;
    const double gy = (above[i] - below[i]) * sy;
    out[i] = gx * gx + gy * gy;
  }
}

double sum(const double* v, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += v[i];
  return s;
}

double sum_sqrt(const double* v, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::sqrt(v[i]);
  return s;
}

double sum_squares(const double* v, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += v[i] * v[i];
  return s;
}

double sum_abs(const double* v, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::abs(v[i]);
  return s;
}

}  // namespace

const KernelTable kTable{Isa::Scalar, gradient_sq_row, sum, sum_sqrt, sum_squares, sum_abs};

}  // namespace wiso::kernels::scalar
