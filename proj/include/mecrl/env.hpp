#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "mecrl/channel.hpp"
#include "mecrl/rng.hpp"
#include "mecrl/workload.hpp"
#include "mecrl/world.hpp"

namespace mecrl::env {

using world::Vec3;

struct NormConfig {
  double queue_bits = 1e9;  // divisor for queue backlog features
  double task_bits = 1e8;   // divisor for task size features
  void validate() const;
};

struct EnvConfig {
  int usvs = 6;
  int uavs = 4;
  int gss = 2;
  world::AreaConfig area;
  world::MobilityConfig mobility;
  channel::ChannelConfig channel;
  workload::ComputeConfig compute;
  NormConfig norm;
  int horizon = 100;  // T, slots per episode
  uint64_t seed = 1;
  // Optional fixed placements; when empty a deterministic default layout is
  // used (UAVs evenly spaced on the mid line, GSs on the southern edge).
  std::vector<std::pair<double, double>> uav_spawn_xy;
  std::vector<std::pair<double, double>> gs_xy;

  int agents() const { return usvs + uavs; }
  void validate() const;
  std::vector<Vec3> uav_spawn_points() const;
  std::vector<Vec3> gs_points() const;
};

// Flat observation layout. Every agent sees the same body (all positions,
// backlogs and latest task sizes, normalized) plus its own identity one-hot.
struct ObsLayout {
  int usvs = 0;
  int uavs = 0;
  int gss = 0;

  static constexpr int kUsvFeatures = 4;  // x, y, queue, task
  static constexpr int kUavFeatures = 3;  // x, y, queue
  static constexpr int kGsFeatures = 3;   // x, y, queue

  int body_len() const { return kUsvFeatures * usvs + kUavFeatures * uavs + kGsFeatures * gss; }
  int onehot_len() const { return usvs + uavs; }
  int total_len() const { return body_len() + onehot_len(); }

  int usv_offset(int i) const { return kUsvFeatures * i; }
  int uav_offset(int j) const { return kUsvFeatures * usvs + kUavFeatures * j; }
  int gs_offset(int k) const { return kUsvFeatures * usvs + kUavFeatures * uavs + kGsFeatures * k; }
  int onehot_offset() const { return body_len(); }
};

using Observation = std::vector<double>;

struct UsvAction {
  int uav_choice = 0;               // 0 = none, 1..J
  int gs_choice = 0;                // 0 = none, 1..K
  double split[3] = {1.0, 0.0, 0.0};  // candidate (alpha, beta, gamma), projected in step
};

struct UavAction {
  double azimuth_rad = 0.0;  // in [0, 2*pi]
  double distance_m = 0.0;   // in [0, uav_max_step]
};

// Agents are ordered USVs first (0..I-1) then UAVs (I..I+J-1).
using AgentAction = std::variant<UsvAction, UavAction>;

struct GlobalState {
  std::vector<world::UsvKinematics> usvs;
  std::vector<world::UavKinematics> uavs;
  std::vector<Vec3> gss;
  workload::QueueState queues;
  std::vector<workload::Task> tasks;  // tasks generated in the latest slot
  int slot = 0;
};

struct StepInfo {
  std::vector<double> usv_delay_s;    // per-USV total delay this slot
  std::vector<double> usv_task_bits;  // per-USV task size this slot
  double phi_so_far = 0.0;            // cumulative delay over the episode
};

struct StepOutcome {
  std::vector<Observation> observations;  // per agent
  double reward = 0.0;
  bool done = false;
  StepInfo info;
};

Observation observe(const GlobalState& state, const EnvConfig& cfg, int agent_id);

// Critic input: the observation body without any identity one-hot.
std::vector<double> state_features(const GlobalState& state, const EnvConfig& cfg);

// One episodic environment instance. Owns its random stream; deterministic
// as a function of (config seed, action sequence).
class Environment {
 public:
  explicit Environment(EnvConfig cfg);

  std::vector<Observation> reset();
  StepOutcome step(const std::vector<AgentAction>& joint_action);

  const GlobalState& state() const { return state_; }
  const EnvConfig& config() const { return cfg_; }
  ObsLayout layout() const { return ObsLayout{cfg_.usvs, cfg_.uavs, cfg_.gss}; }
  double phi() const { return phi_; }

 private:
  EnvConfig cfg_;
  Rng rng_;
  GlobalState state_;
  double phi_ = 0.0;
};

}  // namespace mecrl::env
