#pragma once

#include "mecrl/rng.hpp"

namespace mecrl::world {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Euclidean norm of (a - b).
double distance(const Vec3& a, const Vec3& b);

// Gauss-Markov velocity process parameters for USVs.
struct MobilityConfig {
  double memory_level = 0.8;    // mu in [0, 1]
  double mean_vx = 2.0;         // asymptotic mean velocity, m/s
  double mean_vy = 0.0;
  double asymptotic_std = 1.0;  // m/s
  double noise_std = 1.0;       // std of the per-axis Gaussian noise
  void validate() const;
};

struct AreaConfig {
  double x_max = 1000.0;
  double y_max = 1000.0;
  double uav_altitude = 100.0;  // H, constant for all UAVs
  double uav_max_step = 30.0;   // max flying distance per slot, m
  double slot_s = 1.0;          // slot duration, s
  void validate() const;
};

struct UsvKinematics {
  Vec3 position;  // z == 0
  double vx = 0.0;
  double vy = 0.0;
};

struct UavKinematics {
  Vec3 position;  // z == uav_altitude
};

// One slot of Gauss-Markov motion. Draws exactly two normal variates (x axis
// then y axis) regardless of config so the stream layout is fixed. The
// position advances with the pre-update velocity; afterwards the position is
// clamped to the area and the velocity component of any clamped axis is
// sign-flipped.
UsvKinematics gauss_markov_step(const UsvKinematics& usv, const MobilityConfig& cfg,
                                const AreaConfig& area, Rng& rng);

// Horizontal displacement by (azimuth, distance), then clamping into the
// area. Throws std::invalid_argument when azimuth is outside [0, 2*pi] or
// distance is outside [0, uav_max_step]; callers squash actions first.
UavKinematics apply_uav_action(const UavKinematics& uav, double azimuth_rad, double distance_m,
                               const AreaConfig& area);

}  // namespace mecrl::world
