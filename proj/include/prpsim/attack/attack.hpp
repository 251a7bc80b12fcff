#pragma once
#include "prpsim/model/types.hpp"
#include "prpsim/quadrature/density.hpp"

namespace prpsim::attack {

using model::BasisProbabilities;
using model::ChannelModel;
using model::EveCoupling;
using model::HomodyneModel;
using model::SourceModel;
using model::ThresholdPolicy;
using quadrature::IntegrationSettings;

/// Threshold search bracket. Beyond 8 every outcome probability underflows
/// for the intensities this model targets (mu_s <= 1, kappa <= ~1.5).
inline constexpr double kThresholdBracketMax = 8.0;
/// Bisection stops once the bracket is narrower than this.
inline constexpr double kThresholdSolveTol = 1e-4;
/// Grid step of the monotonicity pre-scan run before each bisection.
inline constexpr double kPreScanStep = 0.05;

struct AttackSummary {
  double error_rate;
  double p_post;
  double equiv_length_km;
};

/// Error rate the intercept-and-resend attack induces, given the four
/// valid-outcome probabilities: wrong-sign outcomes in the matched basis
/// count fully, valid outcomes in the mismatched basis count half.
double error_rate(const BasisProbabilities& bp);

/// Probability that a measurement clears the threshold at all (averaged
/// over the two equiprobable measurement bases).
double post_selection_probability(const BasisProbabilities& bp);

/// Fiber length whose loss reproduces the post-selected count rate:
/// -(10/a) log10(min{1, mu_E * p_post / mu_s}). Clamps to 0 when the
/// resend intensity overcompensates.
double equivalent_length_km(double p_post, double mu_s,
                            const ChannelModel& channel);

/// Smallest x_th in [0, 8] with error_rate(x_th) <= target_e. The error
/// rate is checked to be nonincreasing on the bracket by a pre-scan before
/// bisecting; a non-monotone scan is reported, not ignored.
double solve_threshold_for_error(double target_e, const SourceModel& source,
                                 const HomodyneModel& det,
                                 const IntegrationSettings& settings = {});

/// Largest x_th in [0, 8] whose equivalent channel length stays at or below
/// target_km (the length is nondecreasing in x_th since p_post falls).
double max_threshold_for_length(double target_km, const SourceModel& source,
                                const HomodyneModel& det,
                                const ChannelModel& channel,
                                const IntegrationSettings& settings = {});

/// Signal intensity leaving Alice's zone when the eavesdropper routes a
/// fraction beta of the inbound light into the signal pulse: gamma*beta*n_a_in.
double intensity_at_eve(const EveCoupling& coupling);

/// Convenience bundle: error rate, post-selection probability and the
/// equivalent length at one parameter point.
AttackSummary attack_summary(const ThresholdPolicy& policy,
                             const SourceModel& source, const HomodyneModel& det,
                             const ChannelModel& channel,
                             const IntegrationSettings& settings = {});

}  // namespace prpsim::attack
