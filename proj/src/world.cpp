#include "mecrl/world.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mecrl::world {

double distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void MobilityConfig::validate() const {
  if (!(memory_level >= 0.0 && memory_level <= 1.0))
    throw std::invalid_argument("mobility.memory_level must be in [0, 1]");
  if (!(asymptotic_std >= 0.0))
    throw std::invalid_argument("mobility.asymptotic_std must be >= 0");
  if (!(noise_std >= 0.0)) throw std::invalid_argument("mobility.noise_std must be >= 0");
  if (!std::isfinite(mean_vx) || !std::isfinite(mean_vy))
    throw std::invalid_argument("mobility.mean velocity must be finite");
}

void AreaConfig::validate() const {
  if (!(x_max > 0.0)) throw std::invalid_argument("area.x_max must be > 0");
  if (!(y_max > 0.0)) throw std::invalid_argument("area.y_max must be > 0");
  if (!(uav_altitude > 0.0)) throw std::invalid_argument("area.uav_altitude must be > 0");
  if (!(uav_max_step > 0.0)) throw std::invalid_argument("area.uav_max_step must be > 0");
  if (!(slot_s > 0.0)) throw std::invalid_argument("area.slot_s must be > 0");
}

namespace {

// Clamps v into [0, hi]; flips the paired velocity component when clamped.
double clamp_axis(double v, double hi, double& vel) {
  if (v < 0.0) {
    vel = -vel;
    return 0.0;
  }
  if (v > hi) {
    vel = -vel;
    return hi;
  }
  return v;
}

}  // namespace

UsvKinematics gauss_markov_step(const UsvKinematics& usv, const MobilityConfig& cfg,
                                const AreaConfig& area, Rng& rng) {
  const double wx = rng.normal();
  const double wy = rng.normal();

  const double mu = cfg.memory_level;
  const double drift = std::sqrt(1.0 - mu * mu) * cfg.asymptotic_std * cfg.noise_std;

  UsvKinematics next;
  next.vx = mu * usv.vx + (1.0 - mu) * cfg.mean_vx + drift * wx;
  next.vy = mu * usv.vy + (1.0 - mu) * cfg.mean_vy + drift * wy;

  // Position advances with the slot-t velocity, then gets clamped.
  next.position.x = usv.position.x + usv.vx * area.slot_s;
  next.position.y = usv.position.y + usv.vy * area.slot_s;
  next.position.z = 0.0;

  next.position.x = clamp_axis(next.position.x, area.x_max, next.vx);
  next.position.y = clamp_axis(next.position.y, area.y_max, next.vy);
  return next;
}

UavKinematics apply_uav_action(const UavKinematics& uav, double azimuth_rad, double distance_m,
                               const AreaConfig& area) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (!(azimuth_rad >= 0.0 && azimuth_rad <= two_pi))
    throw std::invalid_argument("uav azimuth out of [0, 2*pi]: " + std::to_string(azimuth_rad));
  if (!(distance_m >= 0.0 && distance_m <= area.uav_max_step))
    throw std::invalid_argument("uav flying distance out of [0, " +
                                std::to_string(area.uav_max_step) +
                                "]: " + std::to_string(distance_m));

  UavKinematics next = uav;
  next.position.x += distance_m * std::cos(azimuth_rad);
  next.position.y += distance_m * std::sin(azimuth_rad);

  next.position.x = std::min(std::max(next.position.x, 0.0), area.x_max);
  next.position.y = std::min(std::max(next.position.y, 0.0), area.y_max);
  return next;
}

}  // namespace mecrl::world
