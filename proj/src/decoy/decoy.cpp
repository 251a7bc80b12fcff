#include "prpsim/decoy/decoy.hpp"

#include <cmath>
#include <limits>

namespace prpsim::decoy {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

}  // namespace

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    raise(ErrorCode::DomainError, "binary_entropy needs x in [0, 1]");
  }
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double yield_single_lower(double q_mu, double q_nu, const DecoyParams& dp) {
  const double mu = dp.mu, nu = dp.nu;
  if (!(mu > nu && nu > 0.0)) {
    raise(ErrorCode::InvalidDecoyPair, "yield bound needs mu > nu > 0");
  }
  return mu / (mu * nu - nu * nu) *
         (q_nu * std::exp(nu) - q_mu * std::exp(mu) * nu * nu / (mu * mu));
}

double error_single_upper(double e_nu, double q_nu, double y1_lower,
                          const DecoyParams& dp) {
  if (!(y1_lower > 0.0)) {
    raise(ErrorCode::NonpositiveYield,
          "single-photon error bound undefined for Y1 <= 0");
  }
  return e_nu * q_nu * std::exp(dp.nu) / (y1_lower * dp.nu);
}

GainsUnderAttack gains_under_attack(const SourceModel& signal,
                                    const SourceModel& decoy,
                                    const ThresholdPolicy& policy,
                                    const HomodyneModel& det,
                                    const ChannelModel& channel,
                                    const IntegrationSettings& settings) {
  if (signal.delta != decoy.delta) {
    raise(ErrorCode::Validation,
          "signal and decoy sources must share the randomization range");
  }
  if (!(signal.mu_s > decoy.mu_s)) {
    raise(ErrorCode::InvalidDecoyPair,
          "signal intensity must exceed decoy intensity");
  }

  const auto post_selected = [&](const SourceModel& src) {
    const auto bp = quadrature::basis_probabilities(policy, src, det, settings);
    return std::pair{attack::post_selection_probability(bp),
                     attack::error_rate(bp)};
  };
  const auto [qp_mu, ep_mu] = post_selected(signal);
  const auto [qp_nu, ep_nu] = post_selected(decoy);

  const double eta = channel.eta_bob;
  const double bg = (1.0 - eta) * channel.y0;

  GainsUnderAttack g;
  g.q_mu_prime = qp_mu;
  g.q_nu_prime = qp_nu;
  g.e_mu_prime = ep_mu;
  g.e_nu_prime = ep_nu;
  g.q_mu = eta * qp_mu + bg;
  g.q_nu = eta * qp_nu + bg;
  if (g.q_mu <= 0.0 || g.q_nu <= 0.0) {
    raise(ErrorCode::ZeroGain, "gain vanished; cannot define an error rate");
  }
  g.e_mu = (eta * qp_mu * ep_mu + bg * channel.e0) / g.q_mu;
  g.e_nu = (eta * qp_nu * ep_nu + bg * channel.e0) / g.q_nu;
  return g;
}

KeyRateReport key_rate_under_attack(const DecoyParams& dp,
                                    const GainsUnderAttack& gains,
                                    const ChannelModel& channel) {
  KeyRateReport r{};
  r.y1_lower = yield_single_lower(gains.q_mu, gains.q_nu, dp);
  r.q1_lower = dp.mu * std::exp(-dp.mu) * r.y1_lower;
  r.l_eq_km = equivalent_length_decoy_km(gains.q_mu, dp, channel);
  if (r.y1_lower <= 0.0) {
    r.e1_upper = kNan;
    r.rate = kNan;
    r.rate_defined = false;
    r.e1_clamped = false;
    return r;
  }
  r.e1_upper = error_single_upper(gains.e_nu, gains.q_nu, r.y1_lower, dp);
  r.e1_clamped = r.e1_upper > 0.5;
  const double e1_for_entropy = r.e1_clamped ? 0.5 : r.e1_upper;
  r.rate = dp.q * (-gains.q_mu * dp.f_ec * binary_entropy(gains.e_mu) +
                   r.q1_lower * (1.0 - binary_entropy(e1_for_entropy)));
  r.rate_defined = true;
  return r;
}

double equivalent_length_decoy_km(double q_mu, const DecoyParams& dp,
                                  const ChannelModel& channel) {
  if (!(q_mu > 0.0)) {
    raise(ErrorCode::InvalidGain, "equivalent length needs a positive gain");
  }
  const double ratio = q_mu / (dp.mu * channel.eta_bob);
  if (ratio >= 1.0) return 0.0;
  return -(10.0 / channel.loss_db_per_km) * std::log10(ratio);
}

std::vector<SweepCell> sweep_mu_nu(
    const std::vector<std::pair<double, double>>& grid, double delta,
    const ThresholdPolicy& policy, const HomodyneModel& det,
    const ChannelModel& channel, const IntegrationSettings& settings) {
  std::vector<SweepCell> cells;
  cells.reserve(grid.size());
  for (const auto& [mu, nu] : grid) {
    SweepCell cell{mu, nu, {}, false, ErrorCode::Validation};
    try {
      const DecoyParams dp(mu, nu);
      const SourceModel signal(mu, delta);
      const SourceModel decoy_src(nu, delta);
      const auto gains =
          gains_under_attack(signal, decoy_src, policy, det, channel, settings);
      cell.report = key_rate_under_attack(dp, gains, channel);
      cell.ok = true;
    } catch (const Error& err) {
      cell.flag = err.code();
    }
    cells.push_back(cell);
  }
  return cells;
}

}  // namespace prpsim::decoy
