#pragma once

#include <vector>

#include "mecrl/rng.hpp"

namespace mecrl::workload {

struct Task {
  double data_bits = 0.0;
  double cycles_per_bit = 0.0;
};

// Per-USV offloading decision. Choice 0 means "none"; 1..J / 1..K pick a
// server. At most one UAV and one GS are selectable by construction.
struct OffloadDecision {
  int uav_choice = 0;
  int gs_choice = 0;
  double alpha = 1.0;  // local share
  double beta = 0.0;   // UAV share
  double gamma = 0.0;  // GS share
};

struct QueueState {
  std::vector<double> usv_bits;
  std::vector<double> uav_bits;
  std::vector<double> gs_bits;
};

struct ComputeConfig {
  double usv_cycles_per_s = 1e9;
  double uav_cycles_per_s = 5e9;
  double gs_cycles_per_s = 2e10;
  double mean_arrival_mbit = 15.0;  // Poisson mean, Mbit per slot
  double cycles_per_bit = 270.0;
  double slot_s = 1.0;
  int horizon = 100;  // slots per episode
  void validate() const;
};

// One task per USV per slot: size = Poisson(mean) * 1e6 bits.
Task sample_task(const ComputeConfig& cfg, Rng& rng);

// Enforces choice/split consistency: a "none" choice zeroes its share and
// the remaining shares are renormalized; output sums to 1. Throws
// std::invalid_argument when the raw split is negative or all-zero.
OffloadDecision project_decision(const OffloadDecision& raw);

// Queue recursion for one slot; per-slot service in bits is
// slot_s * cycles_per_s / cycles_per_bit, clamped at zero backlog.
QueueState update_queues(const QueueState& q, const std::vector<OffloadDecision>& decisions,
                         const std::vector<Task>& tasks, const ComputeConfig& cfg);

// Delay components for one USV's task in one slot, seconds.
double delay_local(double usv_backlog_bits, const OffloadDecision& dec, const Task& task,
                   const ComputeConfig& cfg);
double delay_uav(double uav_backlog_bits, const OffloadDecision& dec, const Task& task,
                 double rate_u2u_bps, const ComputeConfig& cfg);
double delay_gs(double gs_backlog_bits, const OffloadDecision& dec, const Task& task,
                double rate_u2g_bps, const ComputeConfig& cfg);

double total_delay(double local_s, double uav_s, double gs_s);

// Sum of per-slot per-USV delays over a trace.
double cumulative_cost(const std::vector<std::vector<double>>& per_slot_usv_delays);

// Sum of data_bits / delay over USVs with a nonzero task.
double slot_reward(const std::vector<Task>& tasks, const std::vector<double>& delays);

}  // namespace mecrl::workload
