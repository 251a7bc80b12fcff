#pragma once
#include "prpsim/model/types.hpp"
#include "prpsim/quadrature/integrate.hpp"

namespace prpsim::quadrature {

using model::BasisProbabilities;
using model::HomodyneModel;
using model::SourceModel;
using model::ThresholdPolicy;

enum class Side { Plus, Minus };

/// Quadrature-amplitude density of a coherent pulse for a known random
/// phase theta: a Gaussian with mean lambda*sqrt(mu_s)*cos(phi + theta)
/// and standard deviation kappa/2.
double density_given_theta(double x, double phi, double theta,
                           const SourceModel& source, const HomodyneModel& det);

/// Density seen by a measurement with no knowledge of theta: the average of
/// density_given_theta over theta uniform on [0, delta]. delta = 0 is the
/// point-mass case and evaluates at theta = 0 directly.
double density_marginal(double x, double phi, const SourceModel& source,
                        const HomodyneModel& det,
                        const IntegrationSettings& settings = {});

/// P(x >= x_th) (Plus) or P(x <= -x_th) (Minus) under density_marginal.
/// The x-integral is taken in closed form, 0.5*erfc(sqrt(2)(x_th -+ mean)/kappa),
/// so only the theta-average is done numerically.
double outcome_probability(double phi, Side side, const ThresholdPolicy& policy,
                           const SourceModel& source, const HomodyneModel& det,
                           const IntegrationSettings& settings = {});

/// The four valid-outcome probabilities with Alice's phase taken as 0:
/// relative phase 0 for the matched basis and pi/2 for the mismatched one.
BasisProbabilities basis_probabilities(const ThresholdPolicy& policy,
                                       const SourceModel& source,
                                       const HomodyneModel& det,
                                       const IntegrationSettings& settings = {});

}  // namespace prpsim::quadrature
