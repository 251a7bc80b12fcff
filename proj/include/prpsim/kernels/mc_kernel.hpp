#pragma once
#include <cstdint>

#include "prpsim/error.hpp"
#include "prpsim/kernels/detmath.hpp"
#include "prpsim/kernels/lane_scalar.hpp"
#include "prpsim/kernels/philox.hpp"
#include "prpsim/model/types.hpp"

namespace prpsim::kernels {

/// Precomputed per-run constants. Built once on the host so the scalar and
/// SIMD kernels consume bit-identical inputs.
struct McParams {
  double amp;            ///< lambda * sqrt(mu_s)
  double half_kappa;     ///< kappa / 2 (standard deviation of x)
  double x_th;
  double neg_x_th;
  double delta_over_pi;  ///< random-phase range in pi units
  double delta;

  static McParams from(const model::SourceModel& source,
                       const model::HomodyneModel& det,
                       const model::ThresholdPolicy& policy);
};

struct Tally {
  uint64_t n_trials = 0;
  uint64_t n_valid = 0;
  uint64_t n_error = 0;  ///< error events among valid trials

  Tally& operator+=(const Tally& o) {
    n_trials += o.n_trials;
    n_valid += o.n_valid;
    n_error += o.n_error;
    return *this;
  }
  bool operator==(const Tally&) const = default;
};

/// The eight 32-bit Philox words backing one trial, zero-extended into u64
/// lanes. Words a0..a3 come from block 2*i, b0..b3 from block 2*i + 1.
template <class L>
struct TrialWords {
  typename L::U a0, a1, a2, a3, b0, b1, b2, b3;
};

template <class L>
struct TrialOutputs {
  typename L::U phase_idx;   ///< Alice phase index k in {0..3}
  typename L::U basis_idx;   ///< Eve basis index j in {0, 1}
  typename L::F theta_unit;  ///< theta / delta in [0, 1)
  typename L::F x;           ///< sampled quadrature
  typename L::M plus, minus, valid, error;
};

/// One trial of the intercept-and-resend experiment, expressed purely in
/// lane ops: draw phases and the random phase, sample x from the Gaussian
/// via Box-Muller, classify against the threshold, decide the error event.
/// Matched basis: a wrong-sign outcome is an error. Mismatched basis: a
/// valid outcome is an error on a fair coin, keeping the tally Bernoulli.
template <class L>
inline TrialOutputs<L> trial_step(const TrialWords<L>& w, const McParams& p) {
  using F = typename L::F;
  using U = typename L::U;
  using M = typename L::M;

  const U k = L::and_u(w.a0, L::splat_u(3));
  const U j = L::and_u(w.a1, L::splat_u(1));
  const U coin = L::and_u(w.a2, L::splat_u(1));
  const U tbits = L::shr(L::or_u(L::shl(w.a3, 32), w.b0), 12);
  const U u1bits = L::shr(L::or_u(L::shl(w.b1, 32), w.b2), 12);
  const U u2bits = L::shr(L::or_u(L::shl(w.b3, 32), w.a2), 12);

  const F scale52 = L::splat(0x1p-52);
  const F half = L::splat(0.5);
  const F theta_unit = L::mul(L::u52_to_f64(tbits), scale52);
  const F u1 = L::mul(L::add(L::u52_to_f64(u1bits), half), scale52);
  const F u2 = L::mul(L::add(L::u52_to_f64(u2bits), half), scale52);

  // relative phase (k - j)/2 plus the random phase, both in pi units
  const F s_half = L::mul(L::sub(L::u52_to_f64(k), L::u52_to_f64(j)), half);
  const F arg = L::fma(theta_unit, L::splat(p.delta_over_pi), s_half);
  const F mean = L::mul(L::splat(p.amp), det_cospi<L>(arg));

  const F radius = L::sqrt(L::mul(L::splat(-2.0), det_log<L>(u1)));
  const F z = L::mul(radius, det_cospi<L>(L::add(u2, u2)));
  const F x = L::fma(z, L::splat(p.half_kappa), mean);

  const M plus = L::cmp_ge(x, L::splat(p.x_th));
  const M minus = L::cmp_le(x, L::splat(p.neg_x_th));
  const M valid = L::mask_or(plus, minus);

  const U d = L::and_u(L::sub_u(k, j), L::splat_u(3));
  const M match_zero = L::cmp_eq_u(d, 0);
  const M match_pi = L::cmp_eq_u(d, 2);
  const M mismatched = L::cmp_eq_u(L::and_u(d, L::splat_u(1)), 1);
  const M coin_set = L::cmp_eq_u(coin, 1);

  M error = L::mask_or(L::mask_and(match_zero, minus),
                       L::mask_or(L::mask_and(match_pi, plus),
                                  L::mask_and(mismatched, coin_set)));
  error = L::mask_and(error, valid);

  return {k, j, theta_unit, x, plus, minus, valid, error};
}

inline TrialWords<ScalarLane> scalar_trial_words(uint64_t seed,
                                                 uint64_t trial_index) {
  const PhiloxBlock a = philox4x32_10(2 * trial_index, seed);
  const PhiloxBlock b = philox4x32_10(2 * trial_index + 1, seed);
  return {a.w[0], a.w[1], a.w[2], a.w[3], b.w[0], b.w[1], b.w[2], b.w[3]};
}

/// Trial tallies over the half-open index range [begin, end).
using McTallyFn = Tally (*)(const McParams&, uint64_t seed, uint64_t begin,
                            uint64_t end);

Tally mc_tally_scalar(const McParams& p, uint64_t seed, uint64_t begin,
                      uint64_t end);
Tally mc_tally_avx2(const McParams& p, uint64_t seed, uint64_t begin,
                    uint64_t end);

enum class KernelChoice { Auto, Scalar, Avx2 };

/// True when the AVX2 kernel was compiled in and this CPU supports it.
bool avx2_kernel_available();

/// Picks the tally kernel: Auto prefers AVX2 when available. Requesting the
/// AVX2 kernel on a machine without it is a validation error.
McTallyFn select_mc_kernel(KernelChoice choice = KernelChoice::Auto);

const char* kernel_name(McTallyFn fn);

}  // namespace prpsim::kernels
