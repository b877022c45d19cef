#include <cstdlib>
#include <string>

#include "tables.hpp"
#include "wiso/error.hpp"

namespace wiso::kernels {

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "?";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(WISO_HAVE_AVX2_KERNELS)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(WISO_HAVE_NEON_KERNELS)
      return true;  // Advanced SIMD is mandatory on AArch64
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!isa_available(isa))
    throw Error(ErrorCode::Domain, "kernel variant '" + std::string(isa_name(isa)) + "' is not available");
  switch (isa) {
#if defined(WISO_HAVE_AVX2_KERNELS)
    case Isa::Avx2: return avx2::kTable;
#endif
#if defined(WISO_HAVE_NEON_KERNELS)
    case Isa::Neon: return neon::kTable;
#endif
    default: return scalar::kTable;
  }
}

namespace {

const KernelTable& select() {
  if (const char* env = std::getenv("WISO_SIMD")) {
    const std::string want(env);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
      if (want == isa_name(isa) && isa_available(isa)) return table(isa);
  }
  for (Isa isa : {Isa::Avx2, Isa::Neon})
    if (isa_available(isa)) return table(isa);
  return scalar::kTable;
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& chosen = select();
  return chosen;
}

}  // namespace wiso::kernels
