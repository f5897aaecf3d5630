#include "mecrl/env.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mecrl::env {

void NormConfig::validate() const {
  if (!(queue_bits > 0.0)) throw std::invalid_argument("norm.queue_bits must be > 0");
  if (!(task_bits > 0.0)) throw std::invalid_argument("norm.task_bits must be > 0");
}

void EnvConfig::validate() const {
  if (usvs < 1) throw std::invalid_argument("counts.usvs must be >= 1");
  if (uavs < 1) throw std::invalid_argument("counts.uavs must be >= 1");
  if (gss < 1) throw std::invalid_argument("counts.gss must be >= 1");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  area.validate();
  mobility.validate();
  channel.validate();
  compute.validate();
  norm.validate();
  if (!uav_spawn_xy.empty() && static_cast<int>(uav_spawn_xy.size()) != uavs)
    throw std::invalid_argument("uav_spawn must list exactly counts.uavs points");
  if (!gs_xy.empty() && static_cast<int>(gs_xy.size()) != gss)
    throw std::invalid_argument("gs_positions must list exactly counts.gss points");
  if (area.slot_s != compute.slot_s)
    throw std::invalid_argument("area.slot_s and compute.slot_s must match");
}

std::vector<Vec3> EnvConfig::uav_spawn_points() const {
  std::vector<Vec3> pts;
  pts.reserve(uavs);
  if (!uav_spawn_xy.empty()) {
    for (const auto& [x, y] : uav_spawn_xy) pts.push_back({x, y, area.uav_altitude});
    return pts;
  }
  for (int j = 0; j < uavs; ++j) {
    const double x = area.x_max * (j + 1) / (uavs + 1);
    pts.push_back({x, area.y_max / 2.0, area.uav_altitude});
  }
  return pts;
}

std::vector<Vec3> EnvConfig::gs_points() const {
  std::vector<Vec3> pts;
  pts.reserve(gss);
  if (!gs_xy.empty()) {
    for (const auto& [x, y] : gs_xy) pts.push_back({x, y, 0.0});
    return pts;
  }
  for (int k = 0; k < gss; ++k) {
    const double x = area.x_max * (k + 1) / (gss + 1);
    pts.push_back({x, 0.0, 0.0});
  }
  return pts;
}

namespace {

void fill_body(const GlobalState& state, const EnvConfig& cfg, std::vector<double>& out) {
  const ObsLayout layout{cfg.usvs, cfg.uavs, cfg.gss};
  for (int i = 0; i < cfg.usvs; ++i) {
    const int off = layout.usv_offset(i);
    out[off + 0] = state.usvs[i].position.x / cfg.area.x_max;
    out[off + 1] = state.usvs[i].position.y / cfg.area.y_max;
    out[off + 2] = state.queues.usv_bits[i] / cfg.norm.queue_bits;
    out[off + 3] = state.tasks[i].data_bits / cfg.norm.task_bits;
  }
  for (int j = 0; j < cfg.uavs; ++j) {
    const int off = layout.uav_offset(j);
    out[off + 0] = state.uavs[j].position.x / cfg.area.x_max;
    out[off + 1] = state.uavs[j].position.y / cfg.area.y_max;
    out[off + 2] = state.queues.uav_bits[j] / cfg.norm.queue_bits;
  }
  for (int k = 0; k < cfg.gss; ++k) {
    const int off = layout.gs_offset(k);
    out[off + 0] = state.gss[k].x / cfg.area.x_max;
    out[off + 1] = state.gss[k].y / cfg.area.y_max;
    out[off + 2] = state.queues.gs_bits[k] / cfg.norm.queue_bits;
  }
}

std::vector<Observation> observe_all(const GlobalState& state, const EnvConfig& cfg) {
  const ObsLayout layout{cfg.usvs, cfg.uavs, cfg.gss};
  std::vector<double> body(layout.total_len(), 0.0);
  fill_body(state, cfg, body);
  std::vector<Observation> obs(cfg.agents(), body);
  for (int a = 0; a < cfg.agents(); ++a) obs[a][layout.onehot_offset() + a] = 1.0;
  return obs;
}

}  // namespace

Observation observe(const GlobalState& state, const EnvConfig& cfg, int agent_id) {
  if (agent_id < 0 || agent_id >= cfg.agents())
    throw std::invalid_argument("unknown agent id: " + std::to_string(agent_id));
  const ObsLayout layout{cfg.usvs, cfg.uavs, cfg.gss};
  Observation obs(layout.total_len(), 0.0);
  fill_body(state, cfg, obs);
  obs[layout.onehot_offset() + agent_id] = 1.0;
  return obs;
}

std::vector<double> state_features(const GlobalState& state, const EnvConfig& cfg) {
  const ObsLayout layout{cfg.usvs, cfg.uavs, cfg.gss};
  std::vector<double> feat(layout.body_len(), 0.0);
  std::vector<double> full(layout.total_len(), 0.0);
  fill_body(state, cfg, full);
  feat.assign(full.begin(), full.begin() + layout.body_len());
  return feat;
}

Environment::Environment(EnvConfig cfg) : cfg_(std::move(cfg)), rng_(0) {
  cfg_.validate();
  rng_ = Rng::derive(cfg_.seed, "env");
  reset();
}

std::vector<Observation> Environment::reset() {
  rng_ = Rng::derive(cfg_.seed, "env");
  phi_ = 0.0;

  state_ = GlobalState{};
  state_.usvs.resize(cfg_.usvs);
  for (int i = 0; i < cfg_.usvs; ++i) {
    state_.usvs[i].position = {rng_.uniform(0.0, cfg_.area.x_max),
                               rng_.uniform(0.0, cfg_.area.y_max), 0.0};
    state_.usvs[i].vx = cfg_.mobility.mean_vx;
    state_.usvs[i].vy = cfg_.mobility.mean_vy;
  }
  const auto spawns = cfg_.uav_spawn_points();
  state_.uavs.resize(cfg_.uavs);
  for (int j = 0; j < cfg_.uavs; ++j) state_.uavs[j].position = spawns[j];
  state_.gss = cfg_.gs_points();
  state_.queues.usv_bits.assign(cfg_.usvs, 0.0);
  state_.queues.uav_bits.assign(cfg_.uavs, 0.0);
  state_.queues.gs_bits.assign(cfg_.gss, 0.0);
  state_.tasks.assign(cfg_.usvs, workload::Task{0.0, cfg_.compute.cycles_per_bit});
  state_.slot = 0;

  return observe_all(state_, cfg_);
}

StepOutcome Environment::step(const std::vector<AgentAction>& joint_action) {
  if (static_cast<int>(joint_action.size()) != cfg_.agents())
    throw std::invalid_argument("expected " + std::to_string(cfg_.agents()) + " actions, got " +
                                std::to_string(joint_action.size()));
  if (state_.slot >= cfg_.horizon) throw std::logic_error("step called on a finished episode");

  // 1. Project USV actions.
  std::vector<workload::OffloadDecision> decisions(cfg_.usvs);
  for (int i = 0; i < cfg_.usvs; ++i) {
    const auto* act = std::get_if<UsvAction>(&joint_action[i]);
    if (act == nullptr)
      throw std::invalid_argument("agent " + std::to_string(i) + " must supply a UsvAction");
    if (act->uav_choice < 0 || act->uav_choice > cfg_.uavs)
      throw std::invalid_argument("usv uav_choice out of range");
    if (act->gs_choice < 0 || act->gs_choice > cfg_.gss)
      throw std::invalid_argument("usv gs_choice out of range");
    for (double s : act->split)
      if (!std::isfinite(s)) throw std::invalid_argument("NaN in usv split action");
    workload::OffloadDecision raw;
    raw.uav_choice = act->uav_choice;
    raw.gs_choice = act->gs_choice;
    raw.alpha = act->split[0];
    raw.beta = act->split[1];
    raw.gamma = act->split[2];
    decisions[i] = workload::project_decision(raw);
  }
  for (int j = 0; j < cfg_.uavs; ++j) {
    const auto* act = std::get_if<UavAction>(&joint_action[cfg_.usvs + j]);
    if (act == nullptr)
      throw std::invalid_argument("agent " + std::to_string(cfg_.usvs + j) +
                                  " must supply a UavAction");
    if (!std::isfinite(act->azimuth_rad) || !std::isfinite(act->distance_m))
      throw std::invalid_argument("NaN in uav action");
  }

  // 2. Sample this slot's tasks.
  for (int i = 0; i < cfg_.usvs; ++i) state_.tasks[i] = workload::sample_task(cfg_.compute, rng_);

  // 3-4. Rates from pre-movement geometry, then delay components.
  StepInfo info;
  info.usv_delay_s.resize(cfg_.usvs);
  info.usv_task_bits.resize(cfg_.usvs);
  for (int i = 0; i < cfg_.usvs; ++i) {
    const auto& dec = decisions[i];
    const auto& task = state_.tasks[i];
    const double local =
        workload::delay_local(state_.queues.usv_bits[i], dec, task, cfg_.compute);
    double uav = 0.0;
    if (dec.uav_choice > 0) {
      const auto& uav_pos = state_.uavs[dec.uav_choice - 1].position;
      const double rate = channel::rate_u2u(state_.usvs[i].position, uav_pos, cfg_.channel);
      uav = workload::delay_uav(state_.queues.uav_bits[dec.uav_choice - 1], dec, task, rate,
                                cfg_.compute);
    }
    double gs = 0.0;
    if (dec.gs_choice > 0) {
      const auto& gs_pos = state_.gss[dec.gs_choice - 1];
      const double rate = channel::rate_u2g(state_.usvs[i].position, gs_pos, cfg_.channel);
      gs = workload::delay_gs(state_.queues.gs_bits[dec.gs_choice - 1], dec, task, rate,
                              cfg_.compute);
    }
    info.usv_delay_s[i] = workload::total_delay(local, uav, gs);
    info.usv_task_bits[i] = task.data_bits;
  }

  // 5. Shared team reward.
  const double reward = workload::slot_reward(state_.tasks, info.usv_delay_s);
  for (double d : info.usv_delay_s) phi_ += d;
  info.phi_so_far = phi_;

  // 6. Queue recursion.
  state_.queues = workload::update_queues(state_.queues, decisions, state_.tasks, cfg_.compute);

  // 7. Movement: USVs first (two normal draws each, in index order), then UAVs.
  for (int i = 0; i < cfg_.usvs; ++i)
    state_.usvs[i] = world::gauss_markov_step(state_.usvs[i], cfg_.mobility, cfg_.area, rng_);
  for (int j = 0; j < cfg_.uavs; ++j) {
    const auto& act = std::get<UavAction>(joint_action[cfg_.usvs + j]);
    state_.uavs[j] =
        world::apply_uav_action(state_.uavs[j], act.azimuth_rad, act.distance_m, cfg_.area);
  }

  // 8. Advance the slot.
  state_.slot += 1;

  StepOutcome out;
  out.observations = observe_all(state_, cfg_);
  out.reward = reward;
  out.done = (state_.slot == cfg_.horizon);
  out.info = std::move(info);
  return out;
}

}  // namespace mecrl::env
