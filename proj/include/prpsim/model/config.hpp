#pragma once
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "prpsim/model/types.hpp"

namespace prpsim::model {

/// Plain-text scenario parameters, one `key = value` per line, `#` starts a
/// comment. Canonical keys: mu_s, delta_deg, x_th, lambda, kappa, a_db_km,
/// eta_bob, y0, mu, nu, mu_e_mode. mu_e_mode takes `single_photon`,
/// `compensated`, or a positive number (a custom resend intensity).
/// Unknown keys are rejected so typos cannot silently change a run.
struct ScenarioConfig {
  std::optional<double> mu_s;
  std::optional<double> delta_deg;
  std::optional<double> x_th;
  std::optional<double> lambda_eff;
  std::optional<double> kappa;
  std::optional<double> a_db_km;
  std::optional<double> eta_bob;
  std::optional<double> y0;
  std::optional<double> mu;
  std::optional<double> nu;
  std::optional<MuEMode> mu_e_mode;
  std::optional<double> mu_e_custom;

  static ScenarioConfig parse(std::string_view text);
  static ScenarioConfig parse_file(const std::string& path);

  /// Serializes with 17 significant digits so parse(to_text(c)) restores
  /// every double bit-exactly.
  std::string to_text() const;
};

std::string to_key(MuEMode mode);

}  // namespace prpsim::model
