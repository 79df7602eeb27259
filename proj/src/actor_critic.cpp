#include "pathrl/actor_critic.hpp"

#include <stdexcept>

namespace pathrl::nn {

bool Actor::all_finite() const {
  return trunk.all_finite() && steer_head.all_finite() &&
         accel_head.all_finite();
}

bool Actor::same_shape(const Actor& other) const {
  return trunk.same_shape(other.trunk) &&
         steer_head.same_shape(other.steer_head) &&
         accel_head.same_shape(other.accel_head);
}

Actor make_actor(int obs_dim, const std::vector<int>& trunk_widths,
                 int branch_width, std::mt19937_64& rng) {
  if (trunk_widths.empty() || branch_width < 1) {
    throw std::invalid_argument("make_actor: bad shape");
  }
  std::vector<LayerSpec> trunk_spec;
  for (int w : trunk_widths) trunk_spec.push_back({w, Activation::kRelu});
  const std::vector<LayerSpec> head_spec = {
      {branch_width, Activation::kRelu}, {1, Activation::kTanh}};

  Actor actor;
  actor.trunk = make_mlp(obs_dim, trunk_spec, rng, /*near_zero_final=*/false);
  const int trunk_out = trunk_widths.back();
  actor.steer_head = make_mlp(trunk_out, head_spec, rng, true);
  actor.accel_head = make_mlp(trunk_out, head_spec, rng, true);
  return actor;
}

Mlp make_critic(int obs_dim, int act_dim, const std::vector<int>& hidden,
                std::mt19937_64& rng) {
  if (hidden.empty()) throw std::invalid_argument("make_critic: bad shape");
  std::vector<LayerSpec> spec;
  for (int w : hidden) spec.push_back({w, Activation::kRelu});
  spec.push_back({1, Activation::kIdentity});
  return make_mlp(obs_dim + act_dim, spec, rng, /*near_zero_final=*/true);
}

Eigen::MatrixXd actor_forward(const Actor& actor, const Eigen::MatrixXd& obs,
                              ActorCache* cache) {
  const Eigen::MatrixXd h =
      forward(actor.trunk, obs, cache ? &cache->trunk : nullptr);
  const Eigen::MatrixXd steer =
      forward(actor.steer_head, h, cache ? &cache->steer : nullptr);
  const Eigen::MatrixXd accel =
      forward(actor.accel_head, h, cache ? &cache->accel : nullptr);
  Eigen::MatrixXd out(2, obs.cols());
  out.row(0) = steer.row(0);
  out.row(1) = accel.row(0);
  return out;
}

ActorGrads ActorGrads::zeros_like(const Actor& actor) {
  return {MlpGrads::zeros_like(actor.trunk),
          MlpGrads::zeros_like(actor.steer_head),
          MlpGrads::zeros_like(actor.accel_head)};
}

void ActorGrads::scale(double factor) {
  trunk.scale(factor);
  steer.scale(factor);
  accel.scale(factor);
}

double ActorGrads::squared_norm() const {
  return trunk.squared_norm() + steer.squared_norm() + accel.squared_norm();
}

Eigen::MatrixXd actor_backward(const Actor& actor, const ActorCache& cache,
                               const Eigen::MatrixXd& dy, ActorGrads* grads) {
  if (dy.rows() != 2) throw std::invalid_argument("actor_backward: dy rows");
  const Eigen::MatrixXd dh_steer = backward(
      actor.steer_head, cache.steer, dy.row(0), grads ? &grads->steer : nullptr);
  const Eigen::MatrixXd dh_accel = backward(
      actor.accel_head, cache.accel, dy.row(1), grads ? &grads->accel : nullptr);
  return backward(actor.trunk, cache.trunk, dh_steer + dh_accel,
                  grads ? &grads->trunk : nullptr);
}

ActorAdam ActorAdam::zeros_like(const Actor& actor) {
  return {AdamState::zeros_like(actor.trunk),
          AdamState::zeros_like(actor.steer_head),
          AdamState::zeros_like(actor.accel_head)};
}

void adam_step(Actor& actor, const ActorGrads& grads, ActorAdam& state,
               double lr, const AdamConfig& cfg) {
  adam_step(actor.trunk, grads.trunk, state.trunk, lr, cfg);
  adam_step(actor.steer_head, grads.steer, state.steer, lr, cfg);
  adam_step(actor.accel_head, grads.accel, state.accel, lr, cfg);
}

void polyak_update(Mlp& target, const Mlp& source, double rho) {
  if (!target.same_shape(source)) {
    throw std::invalid_argument("polyak_update: shape mismatch");
  }
  for (std::size_t i = 0; i < target.layers.size(); ++i) {
    target.layers[i].W =
        (1.0 - rho) * target.layers[i].W + rho * source.layers[i].W;
    target.layers[i].b =
        (1.0 - rho) * target.layers[i].b + rho * source.layers[i].b;
  }
}

void polyak_update(Actor& target, const Actor& source, double rho) {
  polyak_update(target.trunk, source.trunk, rho);
  polyak_update(target.steer_head, source.steer_head, rho);
  polyak_update(target.accel_head, source.accel_head, rho);
}

}  // namespace pathrl::nn
