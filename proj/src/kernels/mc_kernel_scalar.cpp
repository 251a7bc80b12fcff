#include <cmath>

#include "prpsim/kernels/mc_kernel.hpp"

namespace prpsim::kernels {

McParams McParams::from(const model::SourceModel& source,
                        const model::HomodyneModel& det,
                        const model::ThresholdPolicy& policy) {
  McParams p;
  p.amp = det.lambda_eff * std::sqrt(source.mu_s);
  p.half_kappa = det.kappa * 0.5;
  p.x_th = policy.x_th;
  p.neg_x_th = -policy.x_th;
  p.delta_over_pi = source.delta / model::kPi;
  p.delta = source.delta;
  return p;
}

Tally mc_tally_scalar(const McParams& p, uint64_t seed, uint64_t begin,
                      uint64_t end) {
  Tally t;
  for (uint64_t i = begin; i < end; ++i) {
    const auto out = trial_step<ScalarLane>(scalar_trial_words(seed, i), p);
    t.n_valid += ScalarLane::mask_count(out.valid);
    t.n_error += ScalarLane::mask_count(out.error);
  }
  t.n_trials = end - begin;
  return t;
}

}  // namespace prpsim::kernels
