#pragma once
#include <cmath>
#include <queue>
#include <vector>

#include "prpsim/error.hpp"

namespace prpsim::quadrature {

struct IntegrationSettings {
  double abs_tol = 1e-10;
  int max_subdivisions = 1 << 14;

  IntegrationSettings() = default;
  IntegrationSettings(double abs_tol_, int max_subdivisions_)
      : abs_tol(abs_tol_), max_subdivisions(max_subdivisions_) {
    if (!(abs_tol > 0.0) || max_subdivisions < 1) {
      raise(ErrorCode::Validation,
            "IntegrationSettings: abs_tol > 0 and max_subdivisions >= 1");
    }
  }
};

struct QuadratureResult {
  double value;
  double abs_error;
  int subdivisions;
};

namespace detail {

// 15-point Kronrod / 7-point Gauss pair, nodes mapped to [0, 1].
// Odd indices are the embedded 7-point Gauss abscissae.
inline constexpr double kNodes01[15] = {
    0.0042723144395936940576063989283284,
    0.025446043828620756865888097308925,
    0.067567788320115451661251881887438,
    0.12923440720030276995800022632466,
    0.20695638226615442611944217787823,
    0.29707742431130140792205907018797,
    0.3961075224960507457083735971537,
    0.5,
    0.6038924775039492542916264028463,
    0.7029225756886985365667896985542,
    0.79304361773384557388055782212177,
    0.87076559279969723004199977367534,
    0.93243221167988454833874811811256,
    0.97455395617137918762296067143325,
    0.99572768556040625043124236981384};

inline constexpr double kWeightsK15[15] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

inline constexpr double kWeightsG7[15] = {
    0.0,
    0.129484966168869693270611432679082,
    0.0,
    0.279705391489276667901467771423780,
    0.0,
    0.381830050505118944950369775488975,
    0.0,
    0.417959183673469387755102040816327,
    0.0,
    0.381830050505118944950369775488975,
    0.0,
    0.279705391489276667901467771423780,
    0.0,
    0.129484966168869693270611432679082,
    0.0};

struct Segment {
  double a, b;
  double value;
  double error;

  bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment evaluate_segment(F&& f, double a, double b) {
  // The weight tables are normalized for [-1, 1] (they sum to 2), while the
  // nodes are premapped to [0, 1]; hence the factor h/2.
  const double half_h = 0.5 * (b - a);
  double kron = 0.0, gauss = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double fx = f(a + (b - a) * kNodes01[i]);
    kron += kWeightsK15[i] * fx;
    gauss += kWeightsG7[i] * fx;
  }
  kron *= half_h;
  gauss *= half_h;
  return {a, b, kron, std::abs(kron - gauss)};
}

}  // namespace detail

/// Adaptive quadrature of f over [a, b]: a 15-point Kronrod rule with its
/// embedded 7-point Gauss rule supplies the per-segment error estimate, and
/// the segment with the largest estimate is bisected until the total drops
/// below abs_tol. Throws IntegrationFailure once max_subdivisions bisections
/// were spent without reaching the tolerance.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b,
                                    const IntegrationSettings& settings = {}) {
  if (a == b) return {0.0, 0.0, 0};

  std::priority_queue<detail::Segment> queue;
  queue.push(detail::evaluate_segment(f, a, b));
  double total = queue.top().value;
  double total_err = queue.top().error;

  int splits = 0;
  while (total_err > settings.abs_tol) {
    if (splits >= settings.max_subdivisions) {
      raise(ErrorCode::IntegrationFailure,
            "adaptive quadrature: tolerance not reached within " +
                std::to_string(settings.max_subdivisions) + " subdivisions");
    }
    detail::Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      raise(ErrorCode::IntegrationFailure,
            "adaptive quadrature: interval no longer splittable");
    }
    detail::Segment left = detail::evaluate_segment(f, worst.a, mid);
    detail::Segment right = detail::evaluate_segment(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++splits;
  }
  return {total, total_err, splits};
}

}  // namespace prpsim::quadrature
