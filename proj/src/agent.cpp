#include "pathrl/agent.hpp"

#include <cmath>
#include <stdexcept>

#include "pathrl/seeds.hpp"

namespace pathrl {

Eigen::VectorXd scale_observation(const Eigen::VectorXd& raw,
                                  const AgentConfig& cfg) {
  const int k = (cfg.obs_dim - 2) / 3;
  if (raw.size() != cfg.obs_dim) {
    throw std::invalid_argument("scale_observation: size mismatch");
  }
  Eigen::VectorXd out(raw.size());
  out.head(2 * k) = raw.head(2 * k) / cfg.pos_scale;
  out.segment(2 * k, k + 1) = raw.segment(2 * k, k + 1) / cfg.speed_scale;
  out[3 * k + 1] = raw[3 * k + 1] / cfg.delta_max;
  return out;
}

Eigen::MatrixXd scale_observations(const Eigen::MatrixXd& raw,
                                   const AgentConfig& cfg) {
  const int k = (cfg.obs_dim - 2) / 3;
  if (raw.rows() != cfg.obs_dim) {
    throw std::invalid_argument("scale_observations: size mismatch");
  }
  Eigen::MatrixXd out(raw.rows(), raw.cols());
  out.topRows(2 * k) = raw.topRows(2 * k) / cfg.pos_scale;
  out.middleRows(2 * k, k + 1) = raw.middleRows(2 * k, k + 1) / cfg.speed_scale;
  out.row(3 * k + 1) = raw.row(3 * k + 1) / cfg.delta_max;
  return out;
}

double critic_loss(const Batch& batch, const nn::Mlp& critic,
                   const nn::Mlp& critic_target,
                   const nn::Actor& actor_target, double gamma,
                   nn::MlpGrads* grads) {
  const Eigen::Index n = batch.size();
  if (n == 0) throw std::invalid_argument("critic_loss: empty batch");

  // Bootstrapped target, evaluated entirely on the target networks.
  const Eigen::MatrixXd a_next = actor_forward(actor_target, batch.s_next);
  Eigen::MatrixXd sa_next(batch.s_next.rows() + 2, n);
  sa_next.topRows(batch.s_next.rows()) = batch.s_next;
  sa_next.bottomRows(2) = a_next;
  const Eigen::RowVectorXd q_next = forward(critic_target, sa_next).row(0);
  const Eigen::RowVectorXd target =
      batch.r.transpose().array() +
      gamma * (1.0 - batch.d.transpose().array()) * q_next.array();

  Eigen::MatrixXd sa(batch.s.rows() + 2, n);
  sa.topRows(batch.s.rows()) = batch.s;
  sa.bottomRows(2) = batch.a;
  nn::ForwardCache cache;
  const Eigen::RowVectorXd q = forward(critic, sa, &cache).row(0);

  const Eigen::RowVectorXd diff = q - target;
  const double loss = diff.squaredNorm() / static_cast<double>(n);

  if (grads) {
    const Eigen::MatrixXd dq = (2.0 / static_cast<double>(n)) * diff;
    backward(critic, cache, dq, grads);
  }
  return loss;
}

double actor_objective(const Batch& batch, const nn::Actor& actor,
                       const nn::Mlp& critic, nn::ActorGrads* grads) {
  const Eigen::Index n = batch.size();
  if (n == 0) throw std::invalid_argument("actor_objective: empty batch");

  nn::ActorCache actor_cache;
  const Eigen::MatrixXd a =
      actor_forward(actor, batch.s, grads ? &actor_cache : nullptr);

  Eigen::MatrixXd sa(batch.s.rows() + 2, n);
  sa.topRows(batch.s.rows()) = batch.s;
  sa.bottomRows(2) = a;
  nn::ForwardCache critic_cache;
  const Eigen::RowVectorXd q =
      forward(critic, sa, grads ? &critic_cache : nullptr).row(0);
  const double objective = q.mean();

  if (grads) {
    // dJ/da via the critic input gradient, then through the actor.
    const Eigen::MatrixXd dq =
        Eigen::MatrixXd::Constant(1, n, 1.0 / static_cast<double>(n));
    const Eigen::MatrixXd dsa = backward(critic, critic_cache, dq, nullptr);
    actor_backward(actor, actor_cache, dsa.bottomRows(2), grads);
  }
  return objective;
}

DdpgAgent::DdpgAgent(const AgentConfig& cfg, std::uint64_t seed)
    : cfg_(cfg), actor_lr_(cfg.actor_lr), critic_lr_(cfg.critic_lr) {
  if (!cfg_.valid()) throw std::invalid_argument("DdpgAgent: invalid config");
  auto rng = make_rng(seed, SeedStream::kNetInit, 0);
  actor_ = nn::make_actor(cfg_.obs_dim, cfg_.actor_trunk, cfg_.actor_branch,
                          rng);
  critic_ = nn::make_critic(cfg_.obs_dim, cfg_.act_dim, cfg_.critic_hidden,
                            rng);
  actor_target_ = actor_;
  critic_target_ = critic_;
  actor_adam_ = nn::ActorAdam::zeros_like(actor_);
  critic_adam_ = nn::AdamState::zeros_like(critic_);
}

Action DdpgAgent::act(const Eigen::VectorXd& raw_obs) const {
  const Eigen::VectorXd s = scale_observation(raw_obs, cfg_);
  const Eigen::MatrixXd out = actor_forward(actor_, s);
  return Action{out(0, 0), out(1, 0)};
}

Batch DdpgAgent::make_batch(const ReplayBuffer& buffer,
                            const std::vector<std::size_t>& indices) const {
  const Eigen::Index n = static_cast<Eigen::Index>(indices.size());
  Eigen::MatrixXd s_raw(cfg_.obs_dim, n), s_next_raw(cfg_.obs_dim, n);
  Batch batch;
  batch.a.resize(2, n);
  batch.r.resize(n);
  batch.d.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Transition& t = buffer.at(indices[static_cast<std::size_t>(i)]);
    s_raw.col(i) = t.s;
    s_next_raw.col(i) = t.s_next;
    batch.a(0, i) = t.a.steer;
    batch.a(1, i) = t.a.accel;
    batch.r[i] = t.r;
    batch.d[i] = t.d ? 1.0 : 0.0;
  }
  batch.s = scale_observations(s_raw, cfg_);
  batch.s_next = scale_observations(s_next_raw, cfg_);
  return batch;
}

namespace {

void clip_grads(nn::MlpGrads& g, double max_norm) {
  if (max_norm <= 0.0) return;
  const double norm = std::sqrt(g.squared_norm());
  if (norm > max_norm) g.scale(max_norm / norm);
}

void clip_grads(nn::ActorGrads& g, double max_norm) {
  if (max_norm <= 0.0) return;
  const double norm = std::sqrt(g.squared_norm());
  if (norm > max_norm) g.scale(max_norm / norm);
}

}  // namespace

UpdateStats DdpgAgent::update_once(const ReplayBuffer& buffer,
                                   std::mt19937_64& rng) {
  const auto indices =
      buffer.sample_indices(static_cast<std::size_t>(cfg_.batch_size), rng);
  const Batch batch = make_batch(buffer, indices);

  UpdateStats stats;

  nn::MlpGrads critic_grads = nn::MlpGrads::zeros_like(critic_);
  stats.critic_loss = critic_loss(batch, critic_, critic_target_,
                                  actor_target_, cfg_.gamma, &critic_grads);
  clip_grads(critic_grads, cfg_.grad_clip_norm);
  nn::adam_step(critic_, critic_grads, critic_adam_, critic_lr_);

  nn::ActorGrads actor_grads = nn::ActorGrads::zeros_like(actor_);
  stats.actor_objective = actor_objective(batch, actor_, critic_, &actor_grads);
  clip_grads(actor_grads, cfg_.grad_clip_norm);
  actor_grads.scale(-1.0);  // ascent on J
  nn::adam_step(actor_, actor_grads, actor_adam_, actor_lr_);

  nn::polyak_update(critic_target_, critic_, cfg_.rho);
  nn::polyak_update(actor_target_, actor_, cfg_.rho);
  return stats;
}

void DdpgAgent::set_learning_rates(double actor_lr, double critic_lr) {
  if (actor_lr <= 0.0 || critic_lr <= 0.0) {
    throw std::invalid_argument("set_learning_rates: non-positive rate");
  }
  actor_lr_ = actor_lr;
  critic_lr_ = critic_lr;
}

bool DdpgAgent::all_finite() const {
  return actor_.all_finite() && actor_target_.all_finite() &&
         critic_.all_finite() && critic_target_.all_finite();
}

}  // namespace pathrl
