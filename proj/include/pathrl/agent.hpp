#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pathrl/actor_critic.hpp"
#include "pathrl/replay.hpp"

namespace pathrl {

struct AgentConfig {
  int obs_dim = 77;
  int act_dim = 2;
  std::vector<int> actor_trunk = {256, 256};
  int actor_branch = 64;
  std::vector<int> critic_hidden = {256, 256};

  double gamma = 0.99;
  double rho = 0.005;  // Polyak rate
  int batch_size = 64;
  double actor_lr = 1e-4;
  double critic_lr = 1e-3;
  int updates_per_step = 1;
  double grad_clip_norm = 0.0;  // 0 disables clipping

  // Fixed input conditioning: agent-frame positions are O(25 m), speed
  // terms O(20 m/s), steering O(delta_max); dividing keeps net inputs O(1).
  double pos_scale = 25.0;
  double speed_scale = 20.0;
  double delta_max = deg2rad(30.0);

  bool valid() const {
    return obs_dim > 2 && act_dim == 2 && gamma >= 0.0 && gamma <= 1.0 &&
           rho > 0.0 && rho <= 1.0 && batch_size >= 1 && actor_lr > 0.0 &&
           critic_lr > 0.0 && updates_per_step >= 1 && pos_scale > 0.0 &&
           speed_scale > 0.0 && delta_max > 0.0;
  }
};

// Diagonal observation scaling applied at the agent boundary. Layout must
// match Environment observations: 2k positions, k speed deltas, v, delta.
Eigen::VectorXd scale_observation(const Eigen::VectorXd& raw,
                                  const AgentConfig& cfg);
Eigen::MatrixXd scale_observations(const Eigen::MatrixXd& raw,
                                   const AgentConfig& cfg);

// Mini-batch in matrix form, one column per transition; `s`/`s_next` hold
// already-scaled observations, `d` the terminal mask as 0/1.
struct Batch {
  Eigen::MatrixXd s;
  Eigen::MatrixXd a;
  Eigen::VectorXd r;
  Eigen::MatrixXd s_next;
  Eigen::VectorXd d;

  Eigen::Index size() const { return r.size(); }
};

// Mean-squared Bellman error against the bootstrapped target
// r + gamma * (1 - d) * Q_targ(s', mu_targ(s')). The target branch carries
// no gradient; `grads`, when non-null, receives d(loss)/d(critic params).
double critic_loss(const Batch& batch, const nn::Mlp& critic,
                   const nn::Mlp& critic_target,
                   const nn::Actor& actor_target, double gamma,
                   nn::MlpGrads* grads);

// Batch estimate of the deterministic policy-gradient objective
// J = mean Q(s, mu(s)). `grads`, when non-null, receives dJ/d(actor params)
// (the ascent direction; negate before a descent optimizer).
double actor_objective(const Batch& batch, const nn::Actor& actor,
                       const nn::Mlp& critic, nn::ActorGrads* grads);

struct UpdateStats {
  double critic_loss = 0.0;
  double actor_objective = 0.0;
};

// One DDPG learner: actor/critic, their targets (initialized as exact
// copies), and the Adam states. Single-threaded mutation; inference on a
// copied agent is safe anywhere.
class DdpgAgent {
 public:
  DdpgAgent(const AgentConfig& cfg, std::uint64_t seed);

  // Deterministic policy on a raw observation.
  Action act(const Eigen::VectorXd& raw_obs) const;

  // Builds a uniformly sampled batch from the buffer and performs one
  // critic step, one actor step and one Polyak update of both targets.
  UpdateStats update_once(const ReplayBuffer& buffer, std::mt19937_64& rng);

  Batch make_batch(const ReplayBuffer& buffer,
                   const std::vector<std::size_t>& indices) const;

  const AgentConfig& config() const { return cfg_; }
  double actor_lr() const { return actor_lr_; }
  double critic_lr() const { return critic_lr_; }
  void set_learning_rates(double actor_lr, double critic_lr);

  nn::Actor& actor() { return actor_; }
  const nn::Actor& actor() const { return actor_; }
  nn::Actor& actor_target() { return actor_target_; }
  const nn::Actor& actor_target() const { return actor_target_; }
  nn::Mlp& critic() { return critic_; }
  const nn::Mlp& critic() const { return critic_; }
  nn::Mlp& critic_target() { return critic_target_; }
  const nn::Mlp& critic_target() const { return critic_target_; }
  nn::ActorAdam& actor_adam() { return actor_adam_; }
  const nn::ActorAdam& actor_adam() const { return actor_adam_; }
  nn::AdamState& critic_adam() { return critic_adam_; }
  const nn::AdamState& critic_adam() const { return critic_adam_; }

  bool all_finite() const;

 private:
  AgentConfig cfg_;
  nn::Actor actor_, actor_target_;
  nn::Mlp critic_, critic_target_;
  nn::ActorAdam actor_adam_;
  nn::AdamState critic_adam_;
  double actor_lr_, critic_lr_;
};

}  // namespace pathrl
