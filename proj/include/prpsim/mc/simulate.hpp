#pragma once
#include <cstdint>

#include "prpsim/kernels/mc_kernel.hpp"
#include "prpsim/model/types.hpp"

namespace prpsim::mc {

using kernels::KernelChoice;
using kernels::Tally;
using model::HomodyneModel;
using model::Outcome;
using model::SourceModel;
using model::ThresholdPolicy;

struct TrialRecord {
  double alice_phase;  ///< {0, pi/2, pi, 3*pi/2}
  double eve_basis;    ///< {0, pi/2}
  double theta;        ///< sampled random phase in [0, delta)
  double x;            ///< sampled quadrature
  Outcome outcome;
  bool is_error;       ///< meaningful only for valid outcomes
};

struct McEstimate {
  double mean;
  double std_err;  ///< sqrt(mean (1 - mean) / n) for a Bernoulli tally
  uint64_t n;
  uint64_t seed;
};

struct AttackEstimate {
  McEstimate error_rate;  ///< conditional on valid outcomes
  McEstimate p_post;      ///< over all trials
  Tally tally;
};

struct McOptions {
  KernelChoice kernel = KernelChoice::Auto;
  unsigned threads = 0;  ///< 0 = hardware concurrency
};

/// The trial with the given counter index, fully determined by (seed, index).
TrialRecord simulate_trial(uint64_t seed, uint64_t trial_index,
                           const SourceModel& source, const HomodyneModel& det,
                           const ThresholdPolicy& policy);

/// Runs n trials and estimates the induced error rate (among valid trials)
/// and the post-selection probability. Trials are counter-indexed, so the
/// result depends only on (seed, n, parameters) - not on kernel choice or
/// worker count. Throws NoValidOutcomes when nothing clears the threshold.
AttackEstimate estimate_attack(uint64_t n, uint64_t seed,
                               const SourceModel& source,
                               const HomodyneModel& det,
                               const ThresholdPolicy& policy,
                               const McOptions& options = {});

}  // namespace prpsim::mc
