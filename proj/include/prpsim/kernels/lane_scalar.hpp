#pragma once
#include <cmath>
#include <cstdint>

namespace prpsim::kernels {

/// One-lane reference implementation of the kernel op set. Every operation
/// is a single IEEE-754 double operation (fma is fused), so a kernel written
/// against this interface performs a fixed, reproducible op sequence. The
/// AVX2 lane type mirrors these ops one for one; that is what makes the two
/// kernel variants bit-identical per trial.
struct ScalarLane {
  static constexpr int width = 1;
  using F = double;
  using U = uint64_t;
  using M = bool;

  static F splat(double v) { return v; }
  static U splat_u(uint64_t v) { return v; }

  static F add(F a, F b) { return a + b; }
  static F sub(F a, F b) { return a - b; }
  static F mul(F a, F b) { return a * b; }
  static F div(F a, F b) { return a / b; }
  static F fma(F a, F b, F c) { return std::fma(a, b, c); }
  static F sqrt(F a) { return std::sqrt(a); }
  static F floor(F a) { return std::floor(a); }
  static F neg(F a) { return -a; }

  static M cmp_ge(F a, F b) { return a >= b; }
  static M cmp_le(F a, F b) { return a <= b; }
  static M cmp_gt(F a, F b) { return a > b; }
  static M cmp_eq(F a, F b) { return a == b; }
  static M mask_or(M a, M b) { return a || b; }
  static M mask_and(M a, M b) { return a && b; }
  static F blend(M m, F a, F b) { return m ? a : b; }
  static int mask_count(M m) { return m ? 1 : 0; }

  static U and_u(U a, U b) { return a & b; }
  static U or_u(U a, U b) { return a | b; }
  static U shl(U a, int n) { return a << n; }
  static U shr(U a, int n) { return a >> n; }
  static U sub_u(U a, U b) { return a - b; }
  static M cmp_eq_u(U a, uint64_t c) { return a == c; }

  /// Exact conversion of an integer < 2^52 held in a u64 lane.
  static F u52_to_f64(U v) {
    const uint64_t bits = v | 0x4330000000000000ull;  // 2^52 exponent
    F d;
    __builtin_memcpy(&d, &bits, 8);
    return d - 4503599627370496.0;  // 2^52
  }

  static U f64_bits(F v) {
    U b;
    __builtin_memcpy(&b, &v, 8);
    return b;
  }
  static F bits_to_f64(U b) {
    F v;
    __builtin_memcpy(&v, &b, 8);
    return v;
  }
};

}  // namespace prpsim::kernels
