#pragma once

#include "pathrl/adam.hpp"
#include "pathrl/mlp.hpp"

namespace pathrl::nn {

// Policy network: a shared rectifier trunk feeding two single-output tanh
// branches (steering, acceleration). Outputs are therefore always in
// [-1, 1] per component.
struct Actor {
  Mlp trunk;
  Mlp steer_head;
  Mlp accel_head;

  Eigen::Index input_size() const { return trunk.input_size(); }
  bool all_finite() const;
  bool same_shape(const Actor& other) const;
};

// trunk_widths hidden layers (relu), then per-branch [branch_width relu,
// 1 tanh] with the tanh layer near-zero initialized.
Actor make_actor(int obs_dim, const std::vector<int>& trunk_widths,
                 int branch_width, std::mt19937_64& rng);

// Q network over [state; action], linear single output, near-zero final
// layer init.
Mlp make_critic(int obs_dim, int act_dim, const std::vector<int>& hidden,
                std::mt19937_64& rng);

struct ActorCache {
  ForwardCache trunk, steer, accel;
};

// Batched policy evaluation; returns a 2 x n matrix, row 0 = steering,
// row 1 = acceleration.
Eigen::MatrixXd actor_forward(const Actor& actor, const Eigen::MatrixXd& obs,
                              ActorCache* cache = nullptr);

struct ActorGrads {
  MlpGrads trunk, steer, accel;

  static ActorGrads zeros_like(const Actor& actor);
  void scale(double factor);
  double squared_norm() const;
};

// Reverse-mode through both branches and the trunk. `dy` is 2 x n. Returns
// the observation gradient.
Eigen::MatrixXd actor_backward(const Actor& actor, const ActorCache& cache,
                               const Eigen::MatrixXd& dy, ActorGrads* grads);

struct ActorAdam {
  AdamState trunk, steer, accel;

  static ActorAdam zeros_like(const Actor& actor);
};

void adam_step(Actor& actor, const ActorGrads& grads, ActorAdam& state,
               double lr, const AdamConfig& cfg = {});

// Exponential-moving-average tracking of the main parameters:
// target <- (1 - rho) * target + rho * source.
void polyak_update(Mlp& target, const Mlp& source, double rho);
void polyak_update(Actor& target, const Actor& source, double rho);

}  // namespace pathrl::nn
