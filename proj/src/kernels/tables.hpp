#pragma once

#include "wiso/kernels.hpp"

namespace wiso::kernels {

namespace scalar {
extern const KernelTable kTable;
}
#if defined(WISO_HAVE_AVX2_KERNELS)
namespace avx2 {
extern const KernelTable kTable;
}
#endif
#if defined(WISO_HAVE_NEON_KERNELS)
namespace neon {
extern const KernelTable kTable;
}
#endif

}  // namespace wiso::kernels
