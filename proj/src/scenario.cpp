#include "mecrl/scenario.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace mecrl::scenario {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::string& ctx,
                    std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* key : allowed)
      if (it.key() == key) {
        ok = true;
        break;
      }
    if (!ok) throw std::invalid_argument("unknown key '" + ctx + it.key() + "' in scenario");
  }
}

template <typename T>
void get_to(const json& j, const char* key, T& out) {
  if (j.contains(key)) j.at(key).get_to(out);
}

std::vector<std::pair<double, double>> get_points(const json& j, const char* key) {
  std::vector<std::pair<double, double>> pts;
  if (!j.contains(key)) return pts;
  for (const auto& p : j.at(key)) {
    if (!p.is_array() || p.size() != 2)
      throw std::invalid_argument(std::string(key) + " entries must be [x, y] pairs");
    pts.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return pts;
}

void parse_counts(const json& j, env::EnvConfig& cfg) {
  reject_unknown(j, "counts.", {"usvs", "uavs", "gss"});
  get_to(j, "usvs", cfg.usvs);
  get_to(j, "uavs", cfg.uavs);
  get_to(j, "gss", cfg.gss);
}

void parse_area(const json& j, world::AreaConfig& a) {
  reject_unknown(j, "area.", {"x_max", "y_max", "uav_altitude", "uav_max_step"});
  get_to(j, "x_max", a.x_max);
  get_to(j, "y_max", a.y_max);
  get_to(j, "uav_altitude", a.uav_altitude);
  get_to(j, "uav_max_step", a.uav_max_step);
}

void parse_mobility(const json& j, world::MobilityConfig& m) {
  reject_unknown(j, "mobility.",
                 {"memory_level", "mean_velocity", "asymptotic_std", "noise_std"});
  get_to(j, "memory_level", m.memory_level);
  if (j.contains("mean_velocity")) {
    const auto& v = j.at("mean_velocity");
    if (!v.is_array() || v.size() != 2)
      throw std::invalid_argument("mobility.mean_velocity must be [vx, vy]");
    m.mean_vx = v[0].get<double>();
    m.mean_vy = v[1].get<double>();
  }
  get_to(j, "asymptotic_std", m.asymptotic_std);
  get_to(j, "noise_std", m.noise_std);
}

void parse_channel(const json& j, channel::ChannelConfig& c) {
  reject_unknown(j, "channel.",
                 {"carrier_freq_hz", "light_speed", "zeta_los_db", "zeta_nlos_db", "sigmoid_a",
                  "sigmoid_b", "ref_gain", "noise_dbm", "bandwidth_u2u_hz", "bandwidth_u2g_hz",
                  "usv_tx_power_w"});
  get_to(j, "carrier_freq_hz", c.carrier_freq_hz);
  get_to(j, "light_speed", c.light_speed);
  get_to(j, "zeta_los_db", c.zeta_los_db);
  get_to(j, "zeta_nlos_db", c.zeta_nlos_db);
  get_to(j, "sigmoid_a", c.sigmoid_a);
  get_to(j, "sigmoid_b", c.sigmoid_b);
  get_to(j, "ref_gain", c.ref_gain);
  if (j.contains("noise_dbm")) c.noise_power_w = channel::dbm_to_watts(j.at("noise_dbm").get<double>());
  get_to(j, "bandwidth_u2u_hz", c.bandwidth_u2u_hz);
  get_to(j, "bandwidth_u2g_hz", c.bandwidth_u2g_hz);
  get_to(j, "usv_tx_power_w", c.usv_tx_power_w);
}

void parse_compute(const json& j, workload::ComputeConfig& c) {
  reject_unknown(j, "compute.",
                 {"usv_cycles_per_s", "uav_cycles_per_s", "gs_cycles_per_s", "mean_arrival_mbit",
                  "cycles_per_bit"});
  get_to(j, "usv_cycles_per_s", c.usv_cycles_per_s);
  get_to(j, "uav_cycles_per_s", c.uav_cycles_per_s);
  get_to(j, "gs_cycles_per_s", c.gs_cycles_per_s);
  get_to(j, "mean_arrival_mbit", c.mean_arrival_mbit);
  get_to(j, "cycles_per_bit", c.cycles_per_bit);
}

void parse_norm(const json& j, env::NormConfig& n) {
  reject_unknown(j, "norm.", {"queue_bits", "task_bits"});
  get_to(j, "queue_bits", n.queue_bits);
  get_to(j, "task_bits", n.task_bits);
}

void parse_nets(const json& j, train::NetConfig& n) {
  reject_unknown(j, "nets.", {"d_model", "heads", "mlp_hidden", "log_std_min", "log_std_max"});
  get_to(j, "d_model", n.d_model);
  get_to(j, "heads", n.heads);
  get_to(j, "mlp_hidden", n.mlp_hidden);
  get_to(j, "log_std_min", n.log_std_min);
  get_to(j, "log_std_max", n.log_std_max);
}

void parse_train(const json& j, train::TrainConfig& t) {
  reject_unknown(j, "train.",
                 {"clip_eps", "discount", "gae_lambda", "actor_lr", "critic_lr", "epochs",
                  "minibatches", "iterations", "batch_episodes", "grad_clip", "entropy_coef",
                  "adv_lambda", "reward_scale", "checkpoint_interval"});
  get_to(j, "clip_eps", t.clip_eps);
  get_to(j, "discount", t.discount);
  get_to(j, "gae_lambda", t.gae_lambda);
  get_to(j, "actor_lr", t.actor_lr);
  get_to(j, "critic_lr", t.critic_lr);
  get_to(j, "epochs", t.epochs);
  get_to(j, "minibatches", t.minibatches);
  get_to(j, "iterations", t.iterations);
  get_to(j, "batch_episodes", t.batch_episodes);
  get_to(j, "grad_clip", t.grad_clip);
  get_to(j, "entropy_coef", t.entropy_coef);
  get_to(j, "adv_lambda", t.adv_lambda);
  get_to(j, "reward_scale", t.reward_scale);
  get_to(j, "checkpoint_interval", t.checkpoint_interval);
}

}  // namespace

Scenario from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("scenario must be a JSON object");
  reject_unknown(j, "",
                 {"counts", "area", "mobility", "channel", "compute", "norm", "horizon",
                  "slot_duration", "seed", "uav_spawn", "gs_positions", "nets", "train"});

  Scenario sc;
  if (j.contains("counts")) parse_counts(j.at("counts"), sc.env);
  if (j.contains("area")) parse_area(j.at("area"), sc.env.area);
  if (j.contains("mobility")) parse_mobility(j.at("mobility"), sc.env.mobility);
  if (j.contains("channel")) parse_channel(j.at("channel"), sc.env.channel);
  if (j.contains("compute")) parse_compute(j.at("compute"), sc.env.compute);
  if (j.contains("norm")) parse_norm(j.at("norm"), sc.env.norm);
  if (j.contains("horizon")) {
    sc.env.horizon = j.at("horizon").get<int>();
    sc.env.compute.horizon = sc.env.horizon;
  }
  if (j.contains("slot_duration")) {
    const double tau = j.at("slot_duration").get<double>();
    sc.env.area.slot_s = tau;
    sc.env.compute.slot_s = tau;
  }
  if (j.contains("seed")) sc.env.seed = j.at("seed").get<uint64_t>();
  sc.env.uav_spawn_xy = get_points(j, "uav_spawn");
  sc.env.gs_xy = get_points(j, "gs_positions");
  if (j.contains("nets")) parse_nets(j.at("nets"), sc.train.net);
  if (j.contains("train")) parse_train(j.at("train"), sc.train);

  sc.env.validate();
  sc.train.validate();
  return sc;
}

Scenario load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open scenario file: " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::string to_json_text(const Scenario& sc) {
  json j;
  j["counts"] = {{"usvs", sc.env.usvs}, {"uavs", sc.env.uavs}, {"gss", sc.env.gss}};
  j["area"] = {{"x_max", sc.env.area.x_max},
               {"y_max", sc.env.area.y_max},
               {"uav_altitude", sc.env.area.uav_altitude},
               {"uav_max_step", sc.env.area.uav_max_step}};
  j["mobility"] = {{"memory_level", sc.env.mobility.memory_level},
                   {"mean_velocity", {sc.env.mobility.mean_vx, sc.env.mobility.mean_vy}},
                   {"asymptotic_std", sc.env.mobility.asymptotic_std},
                   {"noise_std", sc.env.mobility.noise_std}};
  j["channel"] = {{"carrier_freq_hz", sc.env.channel.carrier_freq_hz},
                  {"light_speed", sc.env.channel.light_speed},
                  {"zeta_los_db", sc.env.channel.zeta_los_db},
                  {"zeta_nlos_db", sc.env.channel.zeta_nlos_db},
                  {"sigmoid_a", sc.env.channel.sigmoid_a},
                  {"sigmoid_b", sc.env.channel.sigmoid_b},
                  {"ref_gain", sc.env.channel.ref_gain},
                  {"noise_dbm", 10.0 * std::log10(sc.env.channel.noise_power_w) + 30.0},
                  {"bandwidth_u2u_hz", sc.env.channel.bandwidth_u2u_hz},
                  {"bandwidth_u2g_hz", sc.env.channel.bandwidth_u2g_hz},
                  {"usv_tx_power_w", sc.env.channel.usv_tx_power_w}};
  j["compute"] = {{"usv_cycles_per_s", sc.env.compute.usv_cycles_per_s},
                  {"uav_cycles_per_s", sc.env.compute.uav_cycles_per_s},
                  {"gs_cycles_per_s", sc.env.compute.gs_cycles_per_s},
                  {"mean_arrival_mbit", sc.env.compute.mean_arrival_mbit},
                  {"cycles_per_bit", sc.env.compute.cycles_per_bit}};
  j["norm"] = {{"queue_bits", sc.env.norm.queue_bits}, {"task_bits", sc.env.norm.task_bits}};
  j["horizon"] = sc.env.horizon;
  j["slot_duration"] = sc.env.compute.slot_s;
  j["seed"] = sc.env.seed;
  if (!sc.env.uav_spawn_xy.empty()) {
    json pts = json::array();
    for (const auto& [x, y] : sc.env.uav_spawn_xy) pts.push_back({x, y});
    j["uav_spawn"] = pts;
  }
  if (!sc.env.gs_xy.empty()) {
    json pts = json::array();
    for (const auto& [x, y] : sc.env.gs_xy) pts.push_back({x, y});
    j["gs_positions"] = pts;
  }
  j["nets"] = {{"d_model", sc.train.net.d_model},
               {"heads", sc.train.net.heads},
               {"mlp_hidden", sc.train.net.mlp_hidden},
               {"log_std_min", sc.train.net.log_std_min},
               {"log_std_max", sc.train.net.log_std_max}};
  j["train"] = {{"clip_eps", sc.train.clip_eps},
                {"discount", sc.train.discount},
                {"gae_lambda", sc.train.gae_lambda},
                {"actor_lr", sc.train.actor_lr},
                {"critic_lr", sc.train.critic_lr},
                {"epochs", sc.train.epochs},
                {"minibatches", sc.train.minibatches},
                {"iterations", sc.train.iterations},
                {"batch_episodes", sc.train.batch_episodes},
                {"grad_clip", sc.train.grad_clip},
                {"entropy_coef", sc.train.entropy_coef},
                {"adv_lambda", sc.train.adv_lambda},
                {"reward_scale", sc.train.reward_scale},
                {"checkpoint_interval", sc.train.checkpoint_interval}};
  return j.dump(2);
}

}  // namespace mecrl::scenario
