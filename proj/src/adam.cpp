#include "pathrl/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace pathrl::nn {

AdamState AdamState::zeros_like(const Mlp& net) {
  AdamState s;
  for (const Layer& l : net.layers) {
    s.mW.push_back(Eigen::MatrixXd::Zero(l.W.rows(), l.W.cols()));
    s.vW.push_back(Eigen::MatrixXd::Zero(l.W.rows(), l.W.cols()));
    s.mb.push_back(Eigen::VectorXd::Zero(l.b.size()));
    s.vb.push_back(Eigen::VectorXd::Zero(l.b.size()));
  }
  return s;
}

void adam_step(Mlp& net, const MlpGrads& grads, AdamState& state, double lr,
               const AdamConfig& cfg) {
  if (grads.dW.size() != net.layers.size() ||
      state.mW.size() != net.layers.size()) {
    throw std::invalid_argument("adam_step: shape mismatch");
  }
  state.step += 1;
  const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));

  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    auto& W = net.layers[i].W;
    auto& b = net.layers[i].b;
    state.mW[i] = cfg.beta1 * state.mW[i] + (1.0 - cfg.beta1) * grads.dW[i];
    state.vW[i] = cfg.beta2 * state.vW[i].array().matrix() +
                  (1.0 - cfg.beta2) * grads.dW[i].array().square().matrix();
    state.mb[i] = cfg.beta1 * state.mb[i] + (1.0 - cfg.beta1) * grads.db[i];
    state.vb[i] = cfg.beta2 * state.vb[i].array().matrix() +
                  (1.0 - cfg.beta2) * grads.db[i].array().square().matrix();

    W.array() -= lr * (state.mW[i].array() / bc1) /
                 ((state.vW[i].array() / bc2).sqrt() + cfg.epsilon);
    b.array() -= lr * (state.mb[i].array() / bc1) /
                 ((state.vb[i].array() / bc2).sqrt() + cfg.epsilon);
  }
}

}  // namespace pathrl::nn
