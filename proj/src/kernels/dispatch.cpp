#include "prpsim/kernels/mc_kernel.hpp"

namespace prpsim::kernels {

bool avx2_kernel_available() {
#if defined(PRPSIM_HAVE_AVX2_TU) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

McTallyFn select_mc_kernel(KernelChoice choice) {
  switch (choice) {
    case KernelChoice::Scalar:
      return mc_tally_scalar;
    case KernelChoice::Avx2:
#if defined(PRPSIM_HAVE_AVX2_TU)
      if (avx2_kernel_available()) return mc_tally_avx2;
#endif
      raise(ErrorCode::Validation,
            "AVX2 kernel not available in this build or on this CPU");
    case KernelChoice::Auto:
#if defined(PRPSIM_HAVE_AVX2_TU)
      if (avx2_kernel_available()) return mc_tally_avx2;
#endif
      return mc_tally_scalar;
  }
  return mc_tally_scalar;
}

const char* kernel_name(McTallyFn fn) {
#if defined(PRPSIM_HAVE_AVX2_TU)
  if (fn == mc_tally_avx2) return "avx2";
#endif
  return fn == mc_tally_scalar ? "scalar" : "unknown";
}

}  // namespace prpsim::kernels
