#pragma once
#include <utility>
#include <vector>

#include "prpsim/attack/attack.hpp"
#include "prpsim/model/types.hpp"

namespace prpsim::decoy {

using model::ChannelModel;
using model::DecoyParams;
using model::HomodyneModel;
using model::SourceModel;
using model::ThresholdPolicy;
using quadrature::IntegrationSettings;

/// Bob-side gains and error rates for the signal and decoy intensities,
/// together with the post-selected quantities they were assembled from.
struct GainsUnderAttack {
  double q_mu, q_nu;  ///< gains seen by Bob
  double e_mu, e_nu;  ///< error rates seen by Bob
  double q_mu_prime, q_nu_prime;  ///< post-selection probabilities at mu, nu
  double e_mu_prime, e_nu_prime;  ///< induced error rates at mu, nu
};

struct KeyRateReport {
  double y1_lower;   ///< single-photon yield lower bound
  double e1_upper;   ///< single-photon error upper bound (NaN if undefined)
  double q1_lower;   ///< mu*exp(-mu)*y1_lower
  double rate;       ///< GLLP rate, unclamped (NaN when undefined)
  double l_eq_km;    ///< decoy-side equivalent channel length
  bool rate_defined; ///< false when y1_lower <= 0
  bool e1_clamped;   ///< e1_upper exceeded 1/2 inside the entropy term
};

/// H2(x) = -x log2 x - (1-x) log2 (1-x), with H2(0) = H2(1) = 0.
double binary_entropy(double x);

/// One-decoy lower bound on the single-photon yield:
/// mu/(mu*nu - nu^2) * [Q_nu e^nu - Q_mu e^mu nu^2/mu^2].
/// A negative result is returned as-is; callers flag it.
double yield_single_lower(double q_mu, double q_nu, const DecoyParams& dp);

/// One-decoy upper bound on the single-photon error rate:
/// E_nu Q_nu e^nu / (Y1^L nu). Requires y1_lower > 0.
double error_single_upper(double e_nu, double q_nu, double y1_lower,
                          const DecoyParams& dp);

/// Bob's gains/QBER when every post-selected pulse is resent as a single
/// photon: Q = eta_bob*Q' + (1 - eta_bob)*Y0 and the error-weighted match.
/// `signal` and `decoy` must share delta and differ only in mu_s.
GainsUnderAttack gains_under_attack(const SourceModel& signal,
                                    const SourceModel& decoy,
                                    const ThresholdPolicy& policy,
                                    const HomodyneModel& det,
                                    const ChannelModel& channel,
                                    const IntegrationSettings& settings = {});

/// GLLP rate R = q{-Q_mu f_ec H2(E_mu) + Q1^L [1 - H2(e1^U)]} plus the
/// decoy-side equivalent length. e1 beyond 1/2 is clamped to 1/2 inside the
/// entropy (the privacy term is already nonpositive there) and flagged.
KeyRateReport key_rate_under_attack(const DecoyParams& dp,
                                    const GainsUnderAttack& gains,
                                    const ChannelModel& channel);

/// -(10/a) log10(min{1, Q_mu/(mu*eta_bob)}): the fiber length at which an
/// honest channel would show the same signal gain.
double equivalent_length_decoy_km(double q_mu, const DecoyParams& dp,
                                  const ChannelModel& channel);

struct SweepCell {
  double mu, nu;
  KeyRateReport report;  ///< valid only when ok
  bool ok;
  ErrorCode flag;        ///< meaningful only when !ok
};

/// Evaluates the full decoy pipeline over a list of (mu, nu) pairs at fixed
/// delta and threshold. Cells that fail keep their error code; the sweep
/// itself never throws. Output order is the input order.
std::vector<SweepCell> sweep_mu_nu(
    const std::vector<std::pair<double, double>>& grid, double delta,
    const ThresholdPolicy& policy, const HomodyneModel& det,
    const ChannelModel& channel, const IntegrationSettings& settings = {});

}  // namespace prpsim::decoy
