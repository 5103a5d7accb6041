#include <lat40/kernels.hpp>

#include <cstdlib>
#include <string_view>

namespace lat40::kernels {

const KernelTable* avx2_table_unchecked();

const KernelTable* avx2_table() {
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt"))
    return avx2_table_unchecked();
  return nullptr;
}

const KernelTable& active() {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    const char* env = std::getenv("LAT40_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar_table();
    if (const KernelTable* t = avx2_table()) return *t;
    return scalar_table();
  }();
  return chosen;
}

}  // namespace lat40::kernels
