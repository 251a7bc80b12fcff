#include "prpsim/model/types.hpp"

#include <cmath>
#include <string>

namespace prpsim::model {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) raise(ErrorCode::Validation, msg);
}

bool is_bb84_phase(double phase) {
  for (int k = 0; k < 4; ++k) {
    if (std::abs(phase - k * kPi / 2.0) < 1e-12) return true;
  }
  return false;
}

}  // namespace

SourceModel::SourceModel(double mu_s_, double delta_, double alice_phase_)
    : mu_s(mu_s_), delta(delta_), alice_phase(alice_phase_) {
  require(std::isfinite(mu_s) && mu_s >= 0.0, "mu_s must be >= 0");
  require(std::isfinite(delta) && delta >= 0.0 && delta <= kTwoPi,
          "delta must lie in [0, 2*pi]");
  require(is_bb84_phase(alice_phase),
          "alice_phase must be one of {0, pi/2, pi, 3*pi/2}");
}

HomodyneModel::HomodyneModel(double lambda_eff_, double kappa_)
    : lambda_eff(lambda_eff_), kappa(kappa_) {
  require(std::isfinite(lambda_eff) && lambda_eff > 0.0 && lambda_eff <= 1.0,
          "lambda_eff must lie in (0, 1]");
  require(std::isfinite(kappa) && kappa > 0.0, "kappa must be > 0");
}

ThresholdPolicy::ThresholdPolicy(double x_th_) : x_th(x_th_) {
  require(std::isfinite(x_th) && x_th >= 0.0, "x_th must be >= 0");
}

ChannelModel::ChannelModel(double loss_db_per_km_, double eta_bob_, double y0_,
                           MuEMode mode, double mu_e_custom_)
    : loss_db_per_km(loss_db_per_km_),
      eta_bob(eta_bob_),
      y0(y0_),
      e0(0.5),
      mu_e_mode(mode),
      mu_e_custom(mu_e_custom_) {
  require(std::isfinite(loss_db_per_km) && loss_db_per_km > 0.0,
          "loss_db_per_km must be > 0");
  require(std::isfinite(eta_bob) && eta_bob > 0.0 && eta_bob <= 1.0,
          "eta_bob must lie in (0, 1]");
  require(std::isfinite(y0) && y0 >= 0.0 && y0 < 1.0, "y0 must lie in [0, 1)");
  if (mu_e_mode == MuEMode::Custom) {
    require(std::isfinite(mu_e_custom) && mu_e_custom > 0.0,
            "custom mu_E must be > 0");
  }
}

double ChannelModel::transmittance(double length_km) const {
  return std::pow(10.0, -loss_db_per_km * length_km / 10.0);
}

DecoyParams::DecoyParams(double mu_, double nu_)
    : mu(mu_), nu(nu_), q(0.5), f_ec(1.22) {
  require(std::isfinite(mu) && std::isfinite(nu), "mu, nu must be finite");
  if (!(mu > nu && nu > 0.0)) {
    raise(ErrorCode::InvalidDecoyPair, "decoy intensities need mu > nu > 0");
  }
}

BasisProbabilities::BasisProbabilities(double p0_plus_, double p0_minus_,
                                       double ppi2_plus_, double ppi2_minus_)
    : p0_plus(p0_plus_),
      p0_minus(p0_minus_),
      ppi2_plus(ppi2_plus_),
      ppi2_minus(ppi2_minus_) {
  const double vals[] = {p0_plus, p0_minus, ppi2_plus, ppi2_minus};
  for (double v : vals) {
    require(std::isfinite(v) && v >= 0.0 && v <= 1.0,
            "outcome probabilities must lie in [0, 1]");
  }
  require(p0_plus + p0_minus <= 1.0 + 1e-12,
          "matched-basis probabilities exceed 1");
  require(ppi2_plus + ppi2_minus <= 1.0 + 1e-12,
          "mismatched-basis probabilities exceed 1");
}

EveCoupling::EveCoupling(double beta_, double n_a_in_, double gamma_)
    : beta(beta_), n_a_in(n_a_in_), gamma(gamma_) {
  require(std::isfinite(beta) && beta >= 0.0 && beta <= 1.0,
          "beta must lie in [0, 1]");
  require(std::isfinite(n_a_in) && n_a_in >= 0.0, "n_a_in must be >= 0");
  require(std::isfinite(gamma) && gamma > 0.0 && gamma <= 1.0,
          "gamma must lie in (0, 1]");
}

ChannelModel preset_gys() {
  return ChannelModel(0.21, 0.045, 1.7e-6, MuEMode::Compensated);
}

HomodyneModel preset_hirano_homodyne() { return HomodyneModel(0.75, 1.1); }

HomodyneModel preset_perfect_homodyne() { return HomodyneModel(1.0, 1.0); }

}  // namespace prpsim::model

namespace prpsim {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Validation: return "Validation";
    case ErrorCode::IntegrationFailure: return "IntegrationFailure";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::InvalidIntensity: return "InvalidIntensity";
    case ErrorCode::Unachievable: return "Unachievable";
    case ErrorCode::NonMonotoneBracket: return "NonMonotoneBracket";
    case ErrorCode::InvalidDecoyPair: return "InvalidDecoyPair";
    case ErrorCode::NonpositiveYield: return "NonpositiveYield";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InvalidGain: return "InvalidGain";
    case ErrorCode::ZeroGain: return "ZeroGain";
    case ErrorCode::NoValidOutcomes: return "NoValidOutcomes";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace prpsim
