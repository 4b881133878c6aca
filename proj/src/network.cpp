#include "pvtee/network.hpp"

#include <cmath>
#include <numbers>

#include <json.hpp>

#include "pvtee/error.hpp"

namespace pvtee {

using nlohmann::json;

NetworkConfig NetworkConfig::defaults() {
  NetworkConfig c;
  c.lambda_b = 1.0 / (std::numbers::pi * 800.0 * 800.0);
  c.lambda_m = 30.0 * c.lambda_b;
  c.lambda_inf = 0.9 * c.lambda_b;
  c.sigma = 4.0;
  c.fading = channel::FadingParams::make(1.0, 6.0, 8, 4);
  c.traffic = traffic::TrafficLaw::from_bits(1.8, 2.5);
  c.power = energy::PowerModel{0.38, 83.0, 45.5, 40.0};
  c.tx_power_moment = 1e-2;
  c.bandwidth = 1.0;
  return c;
}

void NetworkConfig::validate() const {
  if (!(lambda_b > 0.0) || !std::isfinite(lambda_b)) throw ConfigError("lambda_b_per_m2", "BS intensity must be positive");
  if (!(lambda_m > 0.0) || !std::isfinite(lambda_m)) throw ConfigError("lambda_m_per_m2", "MS intensity must be positive");
  if (!(lambda_inf >= 0.0 && lambda_inf <= lambda_b)) {
    throw ConfigError("lambda_inf_per_m2", "interferer intensity must lie in [0, lambda_b]");
  }
  if (!(sigma > 2.0)) throw ConfigError("pathloss_exponent", "sigma must exceed 2");
  if (!(fading.m >= 0.5)) throw ConfigError("nakagami_m", "Nakagami m must be at least 0.5");
  if (!(fading.sigma_db > 0.0)) throw ConfigError("shadowing_sigma_db", "shadowing spread must be positive");
  if (fading.nt < 1) throw ConfigError("tx_antennas", "at least one transmit antenna is required");
  if (fading.nr < 1) throw ConfigError("rx_antennas", "at least one receive antenna is required");
  try {
    fading.validate();
  } catch (const DomainError& e) {
    throw ConfigError("shadowing_sigma_db", e.what());
  }
  if (!(traffic.theta > 1.0 && traffic.theta <= 2.0)) throw ConfigError("tail_index", "tail index must lie in (1,2]");
  if (!(traffic.rho_min > 0.0)) throw ConfigError("rho_min_bit_per_s_hz", "minimum rate must be positive");
  power.validate();
  if (!(tx_power_moment > 0.0)) throw ConfigError("tx_power_moment_watt_alpha", "transmit power moment must be positive");
  if (!(bandwidth > 0.0)) throw ConfigError("bandwidth_multiplier", "bandwidth multiplier must be positive");
  if (exponent_average != 1 && exponent_average != 2) {
    throw ConfigError("non_outage_exponent_average", "non-outage exponent must be 1 or 2");
  }
  if (exponent_waterfill != 1 && exponent_waterfill != 2) {
    throw ConfigError("non_outage_exponent_waterfill", "non-outage exponent must be 1 or 2");
  }
  if (waterfill_fixed_noise && !(*waterfill_fixed_noise >= 0.0)) {
    throw ConfigError("waterfill_fixed_noise_watt", "fixed noise must be non-negative");
  }
}

double NetworkConfig::empty_cell_probability() const { return std::exp(-ms_per_bs()); }

interference::InterfererModel NetworkConfig::interferers() const {
  return {lambda_inf, tx_power_moment, fading};
}

interference::StableLaw NetworkConfig::stable_law() const { return interference::stable_scale(interferers(), sigma); }

namespace {

double number(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(key, std::string("missing field \"") + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(key, std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

int integer(const json& j, const char* key) {
  const double v = number(j, key);
  if (v != std::floor(v)) throw ConfigError(key, std::string("field \"") + key + "\" must be an integer");
  return static_cast<int>(v);
}

}  // namespace

NetworkConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("", "config must be a JSON object");
  NetworkConfig c;
  c.lambda_b = number(j, "lambda_b_per_m2");
  c.lambda_m = number(j, "lambda_m_per_m2");
  c.lambda_inf = number(j, "lambda_inf_per_m2");
  c.sigma = number(j, "pathloss_exponent");
  const double m = number(j, "nakagami_m");
  const double sdb = number(j, "shadowing_sigma_db");
  const int nt = integer(j, "tx_antennas");
  const int nr = integer(j, "rx_antennas");
  c.fading.m = m;
  c.fading.sigma_db = sdb;
  c.fading.nt = nt;
  c.fading.nr = nr;
  if (sdb > 0.0) {
    const channel::ShadowingParams s = channel::shadowing_params(sdb);
    c.fading.lambda_shape = s.lambda_shape;
    c.fading.omega = s.omega;
  }
  c.traffic.theta = number(j, "tail_index");
  c.traffic.rho_min = number(j, "rho_min_bit_per_s_hz") * std::numbers::ln2;
  c.power.eta = number(j, "pa_efficiency");
  c.power.p_dyn = number(j, "p_dyn_watt");
  c.power.p_sta = number(j, "p_sta_watt");
  c.power.p_max = number(j, "p_max_watt");
  c.tx_power_moment = number(j, "tx_power_moment_watt_alpha");
  c.bandwidth = number(j, "bandwidth_multiplier");
  c.exponent_average = integer(j, "non_outage_exponent_average");
  c.exponent_waterfill = integer(j, "non_outage_exponent_waterfill");
  if (j.contains("waterfill_fixed_noise_watt") && !j.at("waterfill_fixed_noise_watt").is_null()) {
    c.waterfill_fixed_noise = number(j, "waterfill_fixed_noise_watt");
  }
  c.validate();
  return c;
}

std::string dump_config(const NetworkConfig& c) {
  json j;
  j["lambda_b_per_m2"] = c.lambda_b;
  j["lambda_m_per_m2"] = c.lambda_m;
  j["lambda_inf_per_m2"] = c.lambda_inf;
  j["pathloss_exponent"] = c.sigma;
  j["nakagami_m"] = c.fading.m;
  j["shadowing_sigma_db"] = c.fading.sigma_db;
  j["tx_antennas"] = c.fading.nt;
  j["rx_antennas"] = c.fading.nr;
  j["tail_index"] = c.traffic.theta;
  j["rho_min_bit_per_s_hz"] = c.traffic.rho_min / std::numbers::ln2;
  j["pa_efficiency"] = c.power.eta;
  j["p_dyn_watt"] = c.power.p_dyn;
  j["p_sta_watt"] = c.power.p_sta;
  j["p_max_watt"] = c.power.p_max;
  j["tx_power_moment_watt_alpha"] = c.tx_power_moment;
  j["bandwidth_multiplier"] = c.bandwidth;
  j["non_outage_exponent_average"] = c.exponent_average;
  j["non_outage_exponent_waterfill"] = c.exponent_waterfill;
  j["waterfill_fixed_noise_watt"] = c.waterfill_fixed_noise ? json(*c.waterfill_fixed_noise) : json(nullptr);
  return j.dump(2);
}

void set_parameter(NetworkConfig& c, const std::string& name, double value) {
  auto refresh_shadowing = [&] {
    if (c.fading.sigma_db > 0.0) {
      const channel::ShadowingParams s = channel::shadowing_params(c.fading.sigma_db);
      c.fading.lambda_shape = s.lambda_shape;
      c.fading.omega = s.omega;
    }
  };
  auto as_int = [&](const char* key) {
    if (value != std::floor(value)) throw ConfigError(key, std::string(key) + " must be an integer");
    return static_cast<int>(value);
  };
  if (name == "ms_per_bs") c.lambda_m = value * c.lambda_b;
  else if (name == "inf_per_bs") c.lambda_inf = value * c.lambda_b;
  else if (name == "lambda_b_per_m2") c.lambda_b = value;
  else if (name == "lambda_m_per_m2") c.lambda_m = value;
  else if (name == "lambda_inf_per_m2") c.lambda_inf = value;
  else if (name == "pathloss_exponent") c.sigma = value;
  else if (name == "nakagami_m") c.fading.m = value;
  else if (name == "shadowing_sigma_db") {
    c.fading.sigma_db = value;
    refresh_shadowing();
  } else if (name == "tx_antennas") c.fading.nt = as_int("tx_antennas");
  else if (name == "rx_antennas") c.fading.nr = as_int("rx_antennas");
  else if (name == "tail_index") c.traffic.theta = value;
  else if (name == "rho_min_bit_per_s_hz") c.traffic.rho_min = value * std::numbers::ln2;
  else if (name == "pa_efficiency") c.power.eta = value;
  else if (name == "p_dyn_watt") c.power.p_dyn = value;
  else if (name == "p_sta_watt") c.power.p_sta = value;
  else if (name == "p_max_watt") c.power.p_max = value;
  else if (name == "tx_power_moment_watt_alpha") c.tx_power_moment = value;
  else if (name == "bandwidth_multiplier") c.bandwidth = value;
  else throw ConfigError(name, "unknown parameter \"" + name + "\"");
}

}  // namespace pvtee
