#include <cstdlib>
#include <string_view>

#include "relax/kernels.hpp"

namespace relax::kernels {

#if defined(RELAX_HAVE_AVX2_KERNELS)
const KernelTable& avx2_table();
#endif

const KernelTable* avx2() {
#if defined(RELAX_HAVE_AVX2_KERNELS)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable* chosen = [] {
    const char* env = std::getenv("RELAX_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return &scalar();
    if (const KernelTable* t = avx2()) return t;
    return &scalar();
  }();
  return *chosen;
}

}  // namespace relax::kernels
