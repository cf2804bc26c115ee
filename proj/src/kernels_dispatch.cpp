#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace normmesh::kernels {

const KernelTable* avx2_kernels() noexcept {
#if defined(NORMMESH_BUILD_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  if (!supported) return nullptr;
  static const KernelTable table = detail::make_avx2_table();
  return &table;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept {
  static const KernelTable* const chosen = [] {
    const char* env = std::getenv("NORMMESH_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return &scalar_kernels();
    if (const KernelTable* simd = avx2_kernels()) return simd;
    return &scalar_kernels();
  }();
  return *chosen;
}

}  // namespace normmesh::kernels
