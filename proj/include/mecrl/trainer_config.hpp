#pragma once

#include <stdexcept>
#include <string>

namespace mecrl::train {

enum class ActorKind { Attention, Mlp };
enum class Surrogate { Clip, A2c };

struct NetConfig {
  int d_model = 32;
  int heads = 2;
  int mlp_hidden = 64;
  double log_std_min = -4.0;
  double log_std_max = 1.0;
  void validate() const {
    if (d_model < 1 || heads < 1 || mlp_hidden < 1)
      throw std::invalid_argument("nets sizes must be >= 1");
    if (d_model % heads != 0)
      throw std::invalid_argument("nets.d_model must be divisible by nets.heads");
    if (!(log_std_min < log_std_max))
      throw std::invalid_argument("nets.log_std_min must be < nets.log_std_max");
  }
};

struct TrainConfig {
  double clip_eps = 0.2;
  double discount = 0.99;
  double gae_lambda = 0.95;
  double actor_lr = 5e-5;
  double critic_lr = 1e-4;
  int epochs = 5;
  int minibatches = 4;
  int iterations = 100;    // K
  int batch_episodes = 4;  // B, parallel episodes per iteration
  double grad_clip = 0.5;
  double entropy_coef = 0.01;
  double adv_lambda = 0.1;    // adversarial weight; 0 selects the plain critic
  double reward_scale = 1e-7;  // reward scaling for value/advantage arithmetic
  int checkpoint_interval = 0;  // 0 = final checkpoint only
  ActorKind actor_kind = ActorKind::Attention;
  Surrogate surrogate = Surrogate::Clip;
  NetConfig net;

  void validate() const {
    if (!(clip_eps > 0.0)) throw std::invalid_argument("train.clip_eps must be > 0");
    if (!(discount > 0.0 && discount <= 1.0))
      throw std::invalid_argument("train.discount must be in (0, 1]");
    if (!(gae_lambda >= 0.0 && gae_lambda <= 1.0))
      throw std::invalid_argument("train.gae_lambda must be in [0, 1]");
    if (!(actor_lr > 0.0)) throw std::invalid_argument("train.actor_lr must be > 0");
    if (!(critic_lr > 0.0)) throw std::invalid_argument("train.critic_lr must be > 0");
    if (epochs < 1) throw std::invalid_argument("train.epochs must be >= 1");
    if (minibatches < 1) throw std::invalid_argument("train.minibatches must be >= 1");
    if (iterations < 1) throw std::invalid_argument("train.iterations must be >= 1");
    if (batch_episodes < 1) throw std::invalid_argument("train.batch_episodes must be >= 1");
    if (!(grad_clip > 0.0)) throw std::invalid_argument("train.grad_clip must be > 0");
    if (entropy_coef < 0.0) throw std::invalid_argument("train.entropy_coef must be >= 0");
    if (adv_lambda < 0.0) throw std::invalid_argument("train.adv_lambda must be >= 0");
    if (!(reward_scale > 0.0)) throw std::invalid_argument("train.reward_scale must be > 0");
    if (checkpoint_interval < 0)
      throw std::invalid_argument("train.checkpoint_interval must be >= 0");
    net.validate();
  }
};

// Benchmark variants are wiring presets over the same training loop: the
// actor family, the adversarial weight, and the surrogate.
struct VariantSpec {
  std::string name;
  ActorKind actor_kind;
  double adv_lambda;
  Surrogate surrogate;
  int epochs_override;  // 0 = keep config value
};

VariantSpec variant_by_name(const std::string& name);
TrainConfig apply_variant(TrainConfig cfg, const VariantSpec& variant);

}  // namespace mecrl::train
