#pragma once

#include "mecrl/world.hpp"

namespace mecrl::channel {

using world::Vec3;

double dbm_to_watts(double dbm);

struct ChannelConfig {
  double carrier_freq_hz = 2e9;
  double light_speed = 299792458.0;
  double zeta_los_db = 2.3;    // excess loss, line-of-sight
  double zeta_nlos_db = 34.0;  // excess loss, non-line-of-sight
  double sigmoid_a = 10.0;
  double sigmoid_b = 0.6;
  double ref_gain = 1e-4;                          // G_0, channel power gain at 1 m
  double noise_power_w = 3.9810717055349725e-15;   // -114 dBm
  double bandwidth_u2u_hz = 1e6;
  double bandwidth_u2g_hz = 1e6;
  double usv_tx_power_w = 1.0;
  void validate() const;
};

// Elevation angle of the UAV as seen from the USV, degrees in [0, 90].
// Throws std::invalid_argument on coincident points.
double elevation_angle_deg(const Vec3& usv, const Vec3& uav);

// Probabilistic-LoS air-to-surface path loss, dB.
double path_loss_u2u_db(const Vec3& usv, const Vec3& uav, const ChannelConfig& cfg);

// Shannon rate of the USV->UAV link, bits/s.
double rate_u2u(const Vec3& usv, const Vec3& uav, const ChannelConfig& cfg);

// Distance-squared channel power gain of the USV->GS link (dimensionless).
double channel_gain_u2g(const Vec3& usv, const Vec3& gs, const ChannelConfig& cfg);

// Shannon rate of the USV->GS link, bits/s.
double rate_u2g(const Vec3& usv, const Vec3& gs, const ChannelConfig& cfg);

}  // namespace mecrl::channel
