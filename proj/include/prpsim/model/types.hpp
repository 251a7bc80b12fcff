#pragma once
#include <cstdint>

#include "prpsim/error.hpp"

namespace prpsim::model {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Alice's outgoing signal pulse: mean photon number, the range of the
/// random global phase, and (when a fixed encoding matters) her BB84 phase.
/// theta is drawn uniformly from [0, delta]; delta = 0 means the phase is
/// not randomized at all and every theta-average degenerates to theta = 0.
struct SourceModel {
  double mu_s;         ///< mean photon number, >= 0
  double delta;        ///< randomization range in radians, [0, 2*pi]
  double alice_phase;  ///< one of {0, pi/2, pi, 3*pi/2}

  SourceModel(double mu_s, double delta, double alice_phase = 0.0);

  SourceModel with_mu(double new_mu) const { return {new_mu, delta, alice_phase}; }
};

/// Homodyne detector response. lambda_eff scales the signal amplitude,
/// kappa broadens the quadrature distribution; 1/1 is a perfect detector.
/// The local oscillator is assumed strong and already absorbed into the
/// normalized quadrature, so it never appears as a runtime parameter.
struct HomodyneModel {
  double lambda_eff;  ///< amplitude scaling, (0, 1]
  double kappa;       ///< quadrature broadening, > 0

  HomodyneModel(double lambda_eff, double kappa);
};

enum class Outcome : uint8_t { PlusValid, MinusValid, Inconclusive };

/// Symmetric acceptance window: x >= x_th is PlusValid, x <= -x_th is
/// MinusValid, anything strictly between is Inconclusive. At x_th = 0 the
/// plus branch takes x >= 0; the boundary has measure zero.
struct ThresholdPolicy {
  double x_th;  ///< >= 0

  explicit ThresholdPolicy(double x_th);

  Outcome classify(double x) const {
    if (x >= x_th) return Outcome::PlusValid;
    if (x <= -x_th) return Outcome::MinusValid;
    return Outcome::Inconclusive;
  }
};

enum class MuEMode : uint8_t { SinglePhoton, Compensated, Custom };

/// Fiber + receiver parameters entering the equivalent-length and decoy
/// formulas. mu_E is the intensity of the pulse the eavesdropper resends:
/// 1 for a bare single-photon-like resend, 1/eta_bob when she overdrives
/// the pulse to cancel Bob's transmittance, or an explicit custom value.
struct ChannelModel {
  double loss_db_per_km;  ///< fiber attenuation a, > 0
  double eta_bob;         ///< Bob's overall transmittance, (0, 1]
  double y0;              ///< dark-count probability per gate, [0, 1)
  double e0;              ///< dark-count error rate, fixed 0.5
  MuEMode mu_e_mode;
  double mu_e_custom;     ///< used only when mu_e_mode == Custom, > 0

  ChannelModel(double loss_db_per_km, double eta_bob, double y0,
               MuEMode mode = MuEMode::Compensated, double mu_e_custom = 0.0);

  double mu_e() const {
    switch (mu_e_mode) {
      case MuEMode::SinglePhoton: return 1.0;
      case MuEMode::Compensated: return 1.0 / eta_bob;
      case MuEMode::Custom: return mu_e_custom;
    }
    return 1.0;
  }

  /// Channel transmittance 10^(-a*l/10) for a fiber of length_km.
  double transmittance(double length_km) const;
};

/// Signal/decoy intensities plus the protocol constants of the standard
/// BB84 one-decoy analysis. q and f_ec are fixed by the protocol.
struct DecoyParams {
  double mu;    ///< signal mean photon number
  double nu;    ///< decoy mean photon number, 0 < nu < mu
  double q;     ///< sifting factor, 1/2
  double f_ec;  ///< error-correction inefficiency, 1.22

  DecoyParams(double mu, double nu);
};

/// The four thresholded valid-outcome probabilities at relative phase 0
/// (matched basis) and pi/2 (mismatched basis).
struct BasisProbabilities {
  double p0_plus;
  double p0_minus;
  double ppi2_plus;
  double ppi2_minus;

  BasisProbabilities(double p0_plus, double p0_minus, double ppi2_plus,
                     double ppi2_minus);
};

/// How much of the light bound for Alice the eavesdropper routes into the
/// signal pulse, and what survives Alice's attenuator on the way out.
struct EveCoupling {
  double beta;    ///< fraction of intensity assigned to the signal pulse, [0, 1]
  double n_a_in;  ///< total mean photons entering Alice's zone, >= 0
  double gamma;   ///< transmittance of Alice's attenuator, (0, 1]

  EveCoupling(double beta, double n_a_in, double gamma);
};

/// GYS experimental parameters (0.21 dB/km fiber, eta_Bob = 0.045,
/// Y0 = 1.7e-6), resend intensity compensated.
ChannelModel preset_gys();

/// Realistic pulsed-homodyne response measured by Hirano et al.:
/// lambda = 0.75, kappa = 1.1.
HomodyneModel preset_hirano_homodyne();

/// Ideal detector, lambda = kappa = 1.
HomodyneModel preset_perfect_homodyne();

}  // namespace prpsim::model
