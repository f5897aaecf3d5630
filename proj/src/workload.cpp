#include "mecrl/workload.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace mecrl::workload {

void ComputeConfig::validate() const {
  if (!(usv_cycles_per_s > 0.0)) throw std::invalid_argument("compute.usv_cycles_per_s must be > 0");
  if (!(uav_cycles_per_s > 0.0)) throw std::invalid_argument("compute.uav_cycles_per_s must be > 0");
  if (!(gs_cycles_per_s > 0.0)) throw std::invalid_argument("compute.gs_cycles_per_s must be > 0");
  if (!(mean_arrival_mbit >= 0.0))
    throw std::invalid_argument("compute.mean_arrival_mbit must be >= 0");
  if (!(cycles_per_bit > 0.0)) throw std::invalid_argument("compute.cycles_per_bit must be > 0");
  if (!(slot_s > 0.0)) throw std::invalid_argument("compute.slot_s must be > 0");
  if (horizon < 1) throw std::invalid_argument("compute.horizon must be >= 1");
}

Task sample_task(const ComputeConfig& cfg, Rng& rng) {
  Task t;
  t.data_bits = static_cast<double>(rng.poisson(cfg.mean_arrival_mbit)) * 1e6;
  t.cycles_per_bit = cfg.cycles_per_bit;
  return t;
}

OffloadDecision project_decision(const OffloadDecision& raw) {
  if (raw.alpha < 0.0 || raw.beta < 0.0 || raw.gamma < 0.0)
    throw std::invalid_argument("offload split components must be >= 0");
  if (raw.alpha + raw.beta + raw.gamma <= 0.0)
    throw std::invalid_argument("offload split must have a positive sum");

  OffloadDecision dec = raw;
  if (dec.uav_choice == 0) {
    dec.beta = 0.0;
    const double rest = dec.alpha + dec.gamma;
    if (rest <= 0.0) {
      dec.alpha = 1.0;
      dec.gamma = 0.0;
    } else {
      dec.alpha /= rest;
      dec.gamma /= rest;
    }
  }
  if (dec.gs_choice == 0) {
    dec.gamma = 0.0;
    const double rest = dec.alpha + dec.beta;
    if (rest <= 0.0) {
      dec.alpha = 1.0;
      dec.beta = 0.0;
    } else {
      dec.alpha /= rest;
      dec.beta /= rest;
    }
  }
  const double total = dec.alpha + dec.beta + dec.gamma;
  dec.alpha /= total;
  dec.beta /= total;
  dec.gamma /= total;
  return dec;
}

QueueState update_queues(const QueueState& q, const std::vector<OffloadDecision>& decisions,
                         const std::vector<Task>& tasks, const ComputeConfig& cfg) {
  assert(decisions.size() == tasks.size());
  assert(decisions.size() == q.usv_bits.size());

  QueueState next = q;
  const double usv_service = cfg.slot_s * cfg.usv_cycles_per_s / cfg.cycles_per_bit;
  const double uav_service = cfg.slot_s * cfg.uav_cycles_per_s / cfg.cycles_per_bit;
  const double gs_service = cfg.slot_s * cfg.gs_cycles_per_s / cfg.cycles_per_bit;

  for (size_t i = 0; i < decisions.size(); ++i) {
    const OffloadDecision& dec = decisions[i];
    const double d = tasks[i].data_bits;
    next.usv_bits[i] += dec.alpha * d;
    if (dec.uav_choice > 0) next.uav_bits[static_cast<size_t>(dec.uav_choice - 1)] += dec.beta * d;
    if (dec.gs_choice > 0) next.gs_bits[static_cast<size_t>(dec.gs_choice - 1)] += dec.gamma * d;
  }
  for (double& b : next.usv_bits) b = std::max(0.0, b - usv_service);
  for (double& b : next.uav_bits) b = std::max(0.0, b - uav_service);
  for (double& b : next.gs_bits) b = std::max(0.0, b - gs_service);
  return next;
}

double delay_local(double usv_backlog_bits, const OffloadDecision& dec, const Task& task,
                   const ComputeConfig& cfg) {
  const double c = task.cycles_per_bit;
  return usv_backlog_bits * c / cfg.usv_cycles_per_s +
         dec.alpha * task.data_bits * c / cfg.usv_cycles_per_s;
}

double delay_uav(double uav_backlog_bits, const OffloadDecision& dec, const Task& task,
                 double rate_u2u_bps, const ComputeConfig& cfg) {
  if (dec.uav_choice == 0) return 0.0;
  const double c = task.cycles_per_bit;
  const double offload_bits = dec.beta * task.data_bits;
  double transmit = 0.0;
  if (offload_bits > 0.0) {
    if (!(rate_u2u_bps > 0.0))
      throw std::invalid_argument("u2u rate must be > 0 when offloading to a UAV");
    transmit = offload_bits / rate_u2u_bps;
  }
  return uav_backlog_bits * c / cfg.uav_cycles_per_s + transmit +
         offload_bits * c / cfg.uav_cycles_per_s;
}

double delay_gs(double gs_backlog_bits, const OffloadDecision& dec, const Task& task,
                double rate_u2g_bps, const ComputeConfig& cfg) {
  if (dec.gs_choice == 0) return 0.0;
  const double c = task.cycles_per_bit;
  const double offload_bits = dec.gamma * task.data_bits;
  double transmit = 0.0;
  if (offload_bits > 0.0) {
    if (!(rate_u2g_bps > 0.0))
      throw std::invalid_argument("u2g rate must be > 0 when offloading to a GS");
    transmit = offload_bits / rate_u2g_bps;
  }
  return gs_backlog_bits * c / cfg.gs_cycles_per_s + transmit +
         offload_bits * c / cfg.gs_cycles_per_s;
}

double total_delay(double local_s, double uav_s, double gs_s) { return local_s + uav_s + gs_s; }

double cumulative_cost(const std::vector<std::vector<double>>& per_slot_usv_delays) {
  double phi = 0.0;
  for (const auto& slot : per_slot_usv_delays)
    for (double d : slot) phi += d;
  return phi;
}

double slot_reward(const std::vector<Task>& tasks, const std::vector<double>& delays) {
  assert(tasks.size() == delays.size());
  double r = 0.0;
  for (size_t i = 0; i < tasks.size(); ++i) {
    if (tasks[i].data_bits <= 0.0) continue;
    assert(delays[i] > 0.0);
    r += tasks[i].data_bits / delays[i];
  }
  return r;
}

}  // namespace mecrl::workload
