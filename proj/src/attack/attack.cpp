#include "prpsim/attack/attack.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace prpsim::attack {

namespace {

using quadrature::basis_probabilities;

// Slack for "nonincreasing" checks on quantities produced by quadrature at
// abs_tol 1e-10; genuine non-monotonicity shows up orders of magnitude above.
constexpr double kMonotoneSlack = 1e-8;

double error_rate_at(double x_th, const SourceModel& source,
                     const HomodyneModel& det,
                     const IntegrationSettings& settings) {
  return error_rate(
      basis_probabilities(ThresholdPolicy(x_th), source, det, settings));
}

// Verifies f is nonincreasing on [0, kThresholdBracketMax] and returns the
// sampled values. step is coarse; bisection refines inside one cell.
std::vector<double> prescan_nonincreasing(
    const std::function<double(double)>& f, const char* what) {
  std::vector<double> values;
  for (double x = 0.0; x <= kThresholdBracketMax + 1e-12; x += kPreScanStep) {
    values.push_back(f(x));
  }
  for (size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[i - 1] + kMonotoneSlack) {
      raise(ErrorCode::NonMonotoneBracket,
            std::string(what) + " is not monotone over the search bracket");
    }
  }
  return values;
}

}  // namespace

double error_rate(const BasisProbabilities& bp) {
  const double denom = bp.p0_plus + bp.p0_minus + bp.ppi2_plus + bp.ppi2_minus;
  if (denom <= 0.0) {
    raise(ErrorCode::DegenerateDenominator,
          "no valid outcomes at this threshold; attack error rate undefined");
  }
  return (bp.p0_minus + 0.5 * (bp.ppi2_plus + bp.ppi2_minus)) / denom;
}

double post_selection_probability(const BasisProbabilities& bp) {
  return 0.5 * (bp.p0_plus + bp.p0_minus + bp.ppi2_plus + bp.ppi2_minus);
}

double equivalent_length_km(double p_post, double mu_s,
                            const ChannelModel& channel) {
  if (!(mu_s > 0.0)) {
    raise(ErrorCode::InvalidIntensity,
          "equivalent length needs a positive signal intensity");
  }
  const double ratio = channel.mu_e() * p_post / mu_s;
  if (ratio >= 1.0) return 0.0;
  return -(10.0 / channel.loss_db_per_km) * std::log10(ratio);
}

double solve_threshold_for_error(double target_e, const SourceModel& source,
                                 const HomodyneModel& det,
                                 const IntegrationSettings& settings) {
  const auto e_of = [&](double x) {
    return error_rate_at(x, source, det, settings);
  };
  const auto scan = prescan_nonincreasing(e_of, "error rate");
  if (scan.front() <= target_e) return 0.0;

  double min_e = scan.front();
  for (double v : scan) min_e = std::min(min_e, v);
  if (min_e > target_e) {
    raise(ErrorCode::Unachievable,
          "target error rate below the minimum reachable on [0, 8]");
  }

  // Invariant: e(lo) > target >= e(hi).
  double lo = 0.0, hi = kThresholdBracketMax;
  for (size_t i = 1; i < scan.size(); ++i) {
    if (scan[i] <= target_e) {
      lo = (i - 1) * kPreScanStep;
      hi = i * kPreScanStep;
      break;
    }
  }
  while (hi - lo > kThresholdSolveTol) {
    const double mid = 0.5 * (lo + hi);
    (e_of(mid) <= target_e ? hi : lo) = mid;
  }
  return hi;
}

double max_threshold_for_length(double target_km, const SourceModel& source,
                                const HomodyneModel& det,
                                const ChannelModel& channel,
                                const IntegrationSettings& settings) {
  if (target_km < 0.0) {
    raise(ErrorCode::Validation, "target length must be >= 0");
  }
  const auto len_of = [&](double x) {
    const auto bp =
        basis_probabilities(ThresholdPolicy(x), source, det, settings);
    return equivalent_length_km(post_selection_probability(bp), source.mu_s,
                                channel);
  };
  // p_post is nonincreasing in x_th, so the length is nondecreasing; the
  // pre-scan checks the negated curve.
  prescan_nonincreasing([&](double x) { return -len_of(x); },
                        "equivalent length (negated)");
  if (len_of(0.0) > target_km) {
    raise(ErrorCode::Unachievable,
          "even x_th = 0 exceeds the target channel length");
  }
  if (len_of(kThresholdBracketMax) <= target_km) return kThresholdBracketMax;

  // Invariant: len(lo) <= target < len(hi).
  double lo = 0.0, hi = kThresholdBracketMax;
  while (hi - lo > kThresholdSolveTol) {
    const double mid = 0.5 * (lo + hi);
    (len_of(mid) <= target_km ? lo : hi) = mid;
  }
  return lo;
}

double intensity_at_eve(const EveCoupling& coupling) {
  return coupling.gamma * coupling.beta * coupling.n_a_in;
}

AttackSummary attack_summary(const ThresholdPolicy& policy,
                             const SourceModel& source, const HomodyneModel& det,
                             const ChannelModel& channel,
                             const IntegrationSettings& settings) {
  const auto bp = basis_probabilities(policy, source, det, settings);
  const double pp = post_selection_probability(bp);
  return {error_rate(bp), pp,
          equivalent_length_km(pp, source.mu_s, channel)};
}

}  // namespace prpsim::attack
