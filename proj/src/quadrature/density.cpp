#include "prpsim/quadrature/density.hpp"

#include <cmath>

namespace prpsim::quadrature {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

double gaussian_peak(double kappa) {
  return std::sqrt(2.0 / (model::kPi * kappa * kappa));
}

}  // namespace

double density_given_theta(double x, double phi, double theta,
                           const SourceModel& source, const HomodyneModel& det) {
  const double mean = det.lambda_eff * std::sqrt(source.mu_s) * std::cos(phi + theta);
  const double d = x - mean;
  return gaussian_peak(det.kappa) * std::exp(-2.0 * d * d / (det.kappa * det.kappa));
}

double density_marginal(double x, double phi, const SourceModel& source,
                        const HomodyneModel& det,
                        const IntegrationSettings& settings) {
  if (source.delta == 0.0) return density_given_theta(x, phi, 0.0, source, det);
  const auto integrand = [&](double theta) {
    return density_given_theta(x, phi, theta, source, det);
  };
  return integrate_adaptive(integrand, 0.0, source.delta, settings).value /
         source.delta;
}

double outcome_probability(double phi, Side side, const ThresholdPolicy& policy,
                           const SourceModel& source, const HomodyneModel& det,
                           const IntegrationSettings& settings) {
  const double amp = det.lambda_eff * std::sqrt(source.mu_s);
  const double sign = side == Side::Plus ? 1.0 : -1.0;
  const auto tail = [&](double theta) {
    const double mean = amp * std::cos(phi + theta);
    return 0.5 * std::erfc(kSqrt2 * (policy.x_th - sign * mean) / det.kappa);
  };
  if (source.delta == 0.0) return tail(0.0);
  return integrate_adaptive(tail, 0.0, source.delta, settings).value /
         source.delta;
}

BasisProbabilities basis_probabilities(const ThresholdPolicy& policy,
                                       const SourceModel& source,
                                       const HomodyneModel& det,
                                       const IntegrationSettings& settings) {
  const double half_pi = model::kPi / 2.0;
  return BasisProbabilities(
      outcome_probability(0.0, Side::Plus, policy, source, det, settings),
      outcome_probability(0.0, Side::Minus, policy, source, det, settings),
      outcome_probability(half_pi, Side::Plus, policy, source, det, settings),
      outcome_probability(half_pi, Side::Minus, policy, source, det, settings));
}

}  // namespace prpsim::quadrature
