#pragma once

#include <cstddef>
#include <string_view>

// Row kernels behind the grid-function functionals. Each instruction set
// provides the same table; the scalar table is the reference the vector
// variants are tested against. Reductions within one variant always use the
// same association order, so results are reproducible run to run.

namespace wiso::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
  Isa isa;
  /// out[i] = gx^2 + gy^2 for i in [0, n), n >= 2, where
  /// gx = (row[i+1] - row[i-1]) * sx in the interior, one-sided
  /// (scaled by 2 sx) at i = 0 and i = n - 1, and gy = (above[i] - below[i]) * sy.
  void (*gradient_sq_row)(const double* below, const double* row, const double* above, std::size_t n, double sx,
                          double sy, double* out);
  double (*sum)(const double* v, std::size_t n);
  double (*sum_sqrt)(const double* v, std::size_t n);
  double (*sum_squares)(const double* v, std::size_t n);
  double (*sum_abs)(const double* v, std::size_t n);
};

/// Whether the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa) noexcept;

/// Table for a specific variant. Throws Error(Domain) if unavailable.
const KernelTable& table(Isa isa);

/// Variant used by the library: the widest available one, unless the
/// environment variable WISO_SIMD (scalar|avx2|neon) selects another at
/// first use.
const KernelTable& active();

}  // namespace wiso::kernels
