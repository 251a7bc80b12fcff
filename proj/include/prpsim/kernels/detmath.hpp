#pragma once
#include <cstdint>

namespace prpsim::kernels {

// Polynomial transcendentals built from the lane op set only. libm's cos and
// log are not used inside the trial kernels: their rounding may differ
// between builds, while these evaluate a frozen Horner sequence whose every
// step is an exactly-rounded IEEE operation, identical across lane types.
// Accuracy is ~1 ulp over the needed ranges, validated in the kernel tests.

namespace detcoef {

// cos((pi/2) f) = sum c[k] f^(2k), |f| <= 0.5 (Taylor, truncation < 1e-16)
inline constexpr double kCos[9] = {
    1.0,
    -1.2337005501361697,
    0.25366950790104803,
    -0.02086348076335296,
    0.0009192602748394266,
    -2.5202042373060607e-05,
    4.710874778818172e-07,
    -6.386603083791852e-09,
    6.565963114979473e-11};

// sin((pi/2) f) = f * sum s[k] f^(2k), |f| <= 0.5
inline constexpr double kSin[9] = {
    1.5707963267948966,
    -0.6459640975062463,
    0.07969262624616705,
    -0.004681754135318688,
    0.00016044118478735983,
    -3.598843235212085e-06,
    5.692172921967927e-08,
    -6.688035109811468e-10,
    6.0669357311061955e-12};

// ln m = 2 artanh(s), s = (m-1)/(m+1), m in (sqrt2/2, sqrt2]: 2/(2k+1)
inline constexpr double kAtanh[11] = {
    2.0,
    0.66666666666666666,
    0.4,
    0.28571428571428571,
    0.22222222222222222,
    0.18181818181818182,
    0.15384615384615385,
    0.13333333333333333,
    0.11764705882352941,
    0.10526315789473684,
    0.095238095238095238};

inline constexpr double kLn2Hi = 0.6931471805599453;
inline constexpr double kLn2Lo = 9.417232121458176e-18;
inline constexpr double kSqrt2 = 1.4142135623730951;

}  // namespace detcoef

template <class L, int N>
inline typename L::F horner(typename L::F x, const double (&coef)[N]) {
  typename L::F acc = L::splat(coef[N - 1]);
  for (int k = N - 2; k >= 0; --k) {
    acc = L::fma(acc, x, L::splat(coef[k]));
  }
  return acc;
}

/// cos(pi * y) for y in (-2^50, 2^50); the kernels call it with y in (-1, 4).
template <class L>
inline typename L::F det_cospi(typename L::F y) {
  using F = typename L::F;
  const F half = L::splat(0.5);
  // reduce to r = y mod 2 in [0, 2), then to quadrant index q and |f| <= 0.5
  const F r = L::sub(y, L::mul(L::splat(2.0), L::floor(L::mul(y, half))));
  const F h = L::add(r, r);                   // [0, 4)
  const F q = L::floor(L::add(h, half));      // {0, 1, 2, 3, 4}
  const F f = L::sub(h, q);                   // [-0.5, 0.5]
  const F f2 = L::mul(f, f);
  const F c = horner<L>(f2, detcoef::kCos);
  const F s = L::mul(f, horner<L>(f2, detcoef::kSin));
  const auto q0 = L::mask_or(L::cmp_eq(q, L::splat(0.0)),
                             L::cmp_eq(q, L::splat(4.0)));
  const auto q1 = L::cmp_eq(q, L::splat(1.0));
  const auto q2 = L::cmp_eq(q, L::splat(2.0));
  return L::blend(q0, c,
                  L::blend(q1, L::neg(s), L::blend(q2, L::neg(c), s)));
}

/// Natural log of u for u in (0, 1), u a normal double.
template <class L>
inline typename L::F det_log(typename L::F u) {
  using F = typename L::F;
  using U = typename L::U;
  const U bits = L::f64_bits(u);
  const F e_raw =
      L::sub(L::u52_to_f64(L::shr(bits, 52)), L::splat(1023.0));
  const U mant = L::or_u(L::and_u(bits, L::splat_u(0x000FFFFFFFFFFFFFull)),
                         L::splat_u(0x3FF0000000000000ull));
  F m = L::bits_to_f64(mant);  // [1, 2)
  // fold m into (sqrt2/2, sqrt2] so artanh(s) stays small
  const auto big = L::cmp_gt(m, L::splat(detcoef::kSqrt2));
  m = L::blend(big, L::mul(m, L::splat(0.5)), m);
  const F e = L::add(e_raw, L::blend(big, L::splat(1.0), L::splat(0.0)));
  const F one = L::splat(1.0);
  const F s = L::div(L::sub(m, one), L::add(m, one));
  const F lm = L::mul(s, horner<L>(L::mul(s, s), detcoef::kAtanh));
  return L::fma(e, L::splat(detcoef::kLn2Hi),
                L::fma(e, L::splat(detcoef::kLn2Lo), lm));
}

}  // namespace prpsim::kernels
