#include "prpsim/model/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace prpsim::model {

namespace {

std::string_view trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(std::string_view key, std::string_view value) {
  std::string buf(value);
  char* end = nullptr;
  double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || buf.empty()) {
    raise(ErrorCode::ConfigError,
          "config key '" + std::string(key) + "': bad number '" + buf + "'");
  }
  return v;
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string to_key(MuEMode mode) {
  switch (mode) {
    case MuEMode::SinglePhoton: return "single_photon";
    case MuEMode::Compensated: return "compensated";
    case MuEMode::Custom: return "custom";
  }
  return "?";
}

ScenarioConfig ScenarioConfig::parse(std::string_view text) {
  ScenarioConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv(line);
    if (auto hash = sv.find('#'); hash != std::string_view::npos) {
      sv = sv.substr(0, hash);
    }
    sv = trim(sv);
    if (sv.empty()) continue;
    auto eq = sv.find('=');
    if (eq == std::string_view::npos) {
      raise(ErrorCode::ConfigError,
            "config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string_view key = trim(sv.substr(0, eq));
    std::string_view value = trim(sv.substr(eq + 1));
    if (key == "mu_s") cfg.mu_s = parse_double(key, value);
    else if (key == "delta_deg") cfg.delta_deg = parse_double(key, value);
    else if (key == "x_th") cfg.x_th = parse_double(key, value);
    else if (key == "lambda") cfg.lambda_eff = parse_double(key, value);
    else if (key == "kappa") cfg.kappa = parse_double(key, value);
    else if (key == "a_db_km") cfg.a_db_km = parse_double(key, value);
    else if (key == "eta_bob") cfg.eta_bob = parse_double(key, value);
    else if (key == "y0") cfg.y0 = parse_double(key, value);
    else if (key == "mu") cfg.mu = parse_double(key, value);
    else if (key == "nu") cfg.nu = parse_double(key, value);
    else if (key == "mu_e_mode") {
      if (value == "single_photon") cfg.mu_e_mode = MuEMode::SinglePhoton;
      else if (value == "compensated") cfg.mu_e_mode = MuEMode::Compensated;
      else {
        cfg.mu_e_mode = MuEMode::Custom;
        cfg.mu_e_custom = parse_double(key, value);
      }
    } else {
      raise(ErrorCode::ConfigError,
            "config line " + std::to_string(lineno) + ": unknown key '" +
                std::string(key) + "'");
    }
  }
  return cfg;
}

ScenarioConfig ScenarioConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::ConfigError, "cannot open config file " + path);
  std::ostringstream body;
  body << in.rdbuf();
  return parse(body.str());
}

std::string ScenarioConfig::to_text() const {
  std::ostringstream out;
  auto emit = [&](const char* key, const std::optional<double>& v) {
    if (v) out << key << " = " << fmt17(*v) << "\n";
  };
  emit("mu_s", mu_s);
  emit("delta_deg", delta_deg);
  emit("x_th", x_th);
  emit("lambda", lambda_eff);
  emit("kappa", kappa);
  emit("a_db_km", a_db_km);
  emit("eta_bob", eta_bob);
  emit("y0", y0);
  emit("mu", mu);
  emit("nu", nu);
  if (mu_e_mode) {
    if (*mu_e_mode == MuEMode::Custom) {
      out << "mu_e_mode = " << fmt17(mu_e_custom.value_or(0.0)) << "\n";
    } else {
      out << "mu_e_mode = " << to_key(*mu_e_mode) << "\n";
    }
  }
  return out.str();
}

}  // namespace prpsim::model
