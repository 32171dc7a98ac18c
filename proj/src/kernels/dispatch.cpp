#include <cstdlib>
#include <stdexcept>
#include <string>

#include "bitan/kernels/kernels.hpp"

namespace bitan::kernels {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(BITAN_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernel_table(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("instruction set not available: " + std::string(isa_name(isa)));
  }
#if defined(BITAN_HAVE_AVX2)
  if (isa == Isa::avx2) return detail::avx2_table;
#endif
  return detail::scalar_table;
}

const KernelTable& active() {
  static const KernelTable& table = [] () -> const KernelTable& {
    const char* env = std::getenv("BITAN_SIMD");
    if (env != nullptr && std::string(env) == "scalar") return detail::scalar_table;
    return isa_available(Isa::avx2) ? kernel_table(Isa::avx2) : detail::scalar_table;
  }();
  return table;
}

}  // namespace bitan::kernels
