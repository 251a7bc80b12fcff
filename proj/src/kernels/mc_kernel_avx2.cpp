// AVX2 + FMA variant of the trial kernel. Four trials per iteration; the
// eight Philox blocks they need run as one 8-lane 32-bit SoA pass. All
// floating math goes through the same trial_step template as the scalar
// kernel, so the per-trial results are bit-identical between the two.
#include <immintrin.h>

#include <bit>

#include "prpsim/kernels/mc_kernel.hpp"

namespace prpsim::kernels {

namespace {

struct Avx2Lane {
  static constexpr int width = 4;
  using F = __m256d;
  using U = __m256i;
  using M = __m256d;

  static F splat(double v) { return _mm256_set1_pd(v); }
  static U splat_u(uint64_t v) {
    return _mm256_set1_epi64x(static_cast<long long>(v));
  }

  static F add(F a, F b) { return _mm256_add_pd(a, b); }
  static F sub(F a, F b) { return _mm256_sub_pd(a, b); }
  static F mul(F a, F b) { return _mm256_mul_pd(a, b); }
  static F div(F a, F b) { return _mm256_div_pd(a, b); }
  static F fma(F a, F b, F c) { return _mm256_fmadd_pd(a, b, c); }
  static F sqrt(F a) { return _mm256_sqrt_pd(a); }
  static F floor(F a) { return _mm256_floor_pd(a); }
  static F neg(F a) { return _mm256_xor_pd(a, _mm256_set1_pd(-0.0)); }

  static M cmp_ge(F a, F b) { return _mm256_cmp_pd(a, b, _CMP_GE_OQ); }
  static M cmp_le(F a, F b) { return _mm256_cmp_pd(a, b, _CMP_LE_OQ); }
  static M cmp_gt(F a, F b) { return _mm256_cmp_pd(a, b, _CMP_GT_OQ); }
  static M cmp_eq(F a, F b) { return _mm256_cmp_pd(a, b, _CMP_EQ_OQ); }
  static M mask_or(M a, M b) { return _mm256_or_pd(a, b); }
  static M mask_and(M a, M b) { return _mm256_and_pd(a, b); }
  static F blend(M m, F a, F b) { return _mm256_blendv_pd(b, a, m); }
  static int mask_count(M m) {
    return std::popcount(static_cast<unsigned>(_mm256_movemask_pd(m)));
  }

  static U and_u(U a, U b) { return _mm256_and_si256(a, b); }
  static U or_u(U a, U b) { return _mm256_or_si256(a, b); }
  static U shl(U a, int n) { return _mm256_slli_epi64(a, n); }
  static U shr(U a, int n) { return _mm256_srli_epi64(a, n); }
  static U sub_u(U a, U b) { return _mm256_sub_epi64(a, b); }
  static M cmp_eq_u(U a, uint64_t c) {
    return _mm256_castsi256_pd(_mm256_cmpeq_epi64(a, splat_u(c)));
  }

  static F u52_to_f64(U v) {
    const U biased = _mm256_or_si256(v, splat_u(0x4330000000000000ull));
    return _mm256_sub_pd(_mm256_castsi256_pd(biased),
                         _mm256_set1_pd(4503599627370496.0));  // 2^52
  }

  static U f64_bits(F v) { return _mm256_castpd_si256(v); }
  static F bits_to_f64(U b) { return _mm256_castsi256_pd(b); }
};

// 32x32 -> 64 multiply of all eight 32-bit lanes, split into hi/lo words.
inline void mul_hi_lo_8x32(__m256i a, __m256i m, __m256i& hi, __m256i& lo) {
  const __m256i even = _mm256_mul_epu32(a, m);
  const __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), m);
  lo = _mm256_blend_epi32(even, _mm256_slli_epi64(odd, 32), 0b10101010);
  hi = _mm256_blend_epi32(_mm256_srli_epi64(even, 32), odd, 0b10101010);
}

struct Philox8 {
  __m256i w0, w1, w2, w3;  // lanes 0..3: blocks 2(T+i); lanes 4..7: 2(T+i)+1
};

// Eight Philox4x32-10 blocks for the trial quad starting at trial_base.
inline Philox8 philox8(uint64_t trial_base, uint64_t seed) {
  const __m256i offsets = _mm256_set_epi64x(6, 4, 2, 0);
  const __m256i na =
      _mm256_add_epi64(_mm256_set1_epi64x(2 * trial_base), offsets);
  const __m256i nb =
      _mm256_add_epi64(_mm256_set1_epi64x(2 * trial_base + 1), offsets);

  const __m256i lo_idx = _mm256_set_epi32(6, 4, 2, 0, 6, 4, 2, 0);
  const __m256i hi_idx = _mm256_set_epi32(7, 5, 3, 1, 7, 5, 3, 1);
  const __m256i lo_a = _mm256_permutevar8x32_epi32(na, lo_idx);
  const __m256i lo_b = _mm256_permutevar8x32_epi32(nb, lo_idx);
  const __m256i hi_a = _mm256_permutevar8x32_epi32(na, hi_idx);
  const __m256i hi_b = _mm256_permutevar8x32_epi32(nb, hi_idx);

  __m256i c0 = _mm256_permute2x128_si256(lo_a, lo_b, 0x20);
  __m256i c1 = _mm256_permute2x128_si256(hi_a, hi_b, 0x20);
  __m256i c2 = _mm256_setzero_si256();
  __m256i c3 = _mm256_setzero_si256();

  __m256i k0 = _mm256_set1_epi32(static_cast<int>(static_cast<uint32_t>(seed)));
  __m256i k1 =
      _mm256_set1_epi32(static_cast<int>(static_cast<uint32_t>(seed >> 32)));
  const __m256i m0 = _mm256_set1_epi32(static_cast<int>(kPhiloxM0));
  const __m256i m1 = _mm256_set1_epi32(static_cast<int>(kPhiloxM1));
  const __m256i w0 = _mm256_set1_epi32(static_cast<int>(kPhiloxW0));
  const __m256i w1 = _mm256_set1_epi32(static_cast<int>(kPhiloxW1));

  for (int round = 0; round < 10; ++round) {
    __m256i hi0, lo0, hi1, lo1;
    mul_hi_lo_8x32(c0, m0, hi0, lo0);
    mul_hi_lo_8x32(c2, m1, hi1, lo1);
    c0 = _mm256_xor_si256(_mm256_xor_si256(hi1, c1), k0);
    c1 = lo1;
    c2 = _mm256_xor_si256(_mm256_xor_si256(hi0, c3), k1);
    c3 = lo0;
    k0 = _mm256_add_epi32(k0, w0);
    k1 = _mm256_add_epi32(k1, w1);
  }
  return {c0, c1, c2, c3};
}

// Split each output word into the per-trial a (even block) and b (odd block)
// halves, zero-extended to u64 lanes.
inline TrialWords<Avx2Lane> gather_words(const Philox8& blk) {
  const auto lo = [](__m256i w) {
    return _mm256_cvtepu32_epi64(_mm256_castsi256_si128(w));
  };
  const auto hi = [](__m256i w) {
    return _mm256_cvtepu32_epi64(_mm256_extracti128_si256(w, 1));
  };
  return {lo(blk.w0), lo(blk.w1), lo(blk.w2), lo(blk.w3),
          hi(blk.w0), hi(blk.w1), hi(blk.w2), hi(blk.w3)};
}

}  // namespace

Tally mc_tally_avx2(const McParams& p, uint64_t seed, uint64_t begin,
                    uint64_t end) {
  Tally t;
  uint64_t i = begin;
  for (; i + 4 <= end; i += 4) {
    const auto out = trial_step<Avx2Lane>(gather_words(philox8(i, seed)), p);
    t.n_valid += Avx2Lane::mask_count(out.valid);
    t.n_error += Avx2Lane::mask_count(out.error);
  }
  for (; i < end; ++i) {  // remainder: the scalar step is bit-identical
    const auto out = trial_step<ScalarLane>(scalar_trial_words(seed, i), p);
    t.n_valid += ScalarLane::mask_count(out.valid);
    t.n_error += ScalarLane::mask_count(out.error);
  }
  t.n_trials = end - begin;
  return t;
}

}  // namespace prpsim::kernels
