#include "mecrl/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mecrl::channel {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

void ChannelConfig::validate() const {
  if (!(carrier_freq_hz > 0.0)) throw std::invalid_argument("channel.carrier_freq_hz must be > 0");
  if (!(light_speed > 0.0)) throw std::invalid_argument("channel.light_speed must be > 0");
  if (!(ref_gain > 0.0)) throw std::invalid_argument("channel.ref_gain must be > 0");
  if (!(noise_power_w > 0.0)) throw std::invalid_argument("channel.noise_power_w must be > 0");
  if (!(bandwidth_u2u_hz > 0.0)) throw std::invalid_argument("channel.bandwidth_u2u_hz must be > 0");
  if (!(bandwidth_u2g_hz > 0.0)) throw std::invalid_argument("channel.bandwidth_u2g_hz must be > 0");
  if (!(usv_tx_power_w > 0.0)) throw std::invalid_argument("channel.usv_tx_power_w must be > 0");
}

double elevation_angle_deg(const Vec3& usv, const Vec3& uav) {
  const double d = world::distance(usv, uav);
  if (d <= 0.0) throw std::invalid_argument("elevation angle undefined for coincident points");
  const double s = std::clamp(std::abs(uav.z - usv.z) / d, 0.0, 1.0);
  return std::asin(s) * 180.0 / std::numbers::pi;
}

double path_loss_u2u_db(const Vec3& usv, const Vec3& uav, const ChannelConfig& cfg) {
  const double d = world::distance(usv, uav);
  if (d <= 0.0) throw std::invalid_argument("u2u path loss undefined at zero distance");
  const double elev = elevation_angle_deg(usv, uav);
  const double los_term = (cfg.zeta_los_db - cfg.zeta_nlos_db) /
                          (1.0 + cfg.sigmoid_a * std::exp(-cfg.sigmoid_b * (elev - cfg.sigmoid_a)));
  const double fspl =
      20.0 * std::log10(4.0 * std::numbers::pi * cfg.carrier_freq_hz * d / cfg.light_speed);
  return los_term + fspl + cfg.zeta_nlos_db;
}

double rate_u2u(const Vec3& usv, const Vec3& uav, const ChannelConfig& cfg) {
  const double loss_db = path_loss_u2u_db(usv, uav, cfg);
  const double gain = std::pow(10.0, -loss_db / 10.0);
  const double snr = cfg.usv_tx_power_w * gain / cfg.noise_power_w;
  return cfg.bandwidth_u2u_hz * std::log2(1.0 + snr);
}

double channel_gain_u2g(const Vec3& usv, const Vec3& gs, const ChannelConfig& cfg) {
  const double d = world::distance(usv, gs);
  if (d <= 0.0) throw std::invalid_argument("u2g channel gain undefined at zero distance");
  return cfg.ref_gain / (d * d);
}

double rate_u2g(const Vec3& usv, const Vec3& gs, const ChannelConfig& cfg) {
  const double snr = cfg.usv_tx_power_w * channel_gain_u2g(usv, gs, cfg) / cfg.noise_power_w;
  return cfg.bandwidth_u2g_hz * std::log2(1.0 + snr);
}

}  // namespace mecrl::channel
