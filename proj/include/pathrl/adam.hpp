#pragma once

#include <cstdint>

#include "pathrl/mlp.hpp"

namespace pathrl::nn {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// First/second moment accumulators, one pair per parameter tensor.
struct AdamState {
  std::vector<Eigen::MatrixXd> mW, vW;
  std::vector<Eigen::VectorXd> mb, vb;
  std::int64_t step = 0;

  static AdamState zeros_like(const Mlp& net);
};

// Standard bias-corrected Adam update, descent direction. Callers with an
// ascent objective negate their gradients first.
void adam_step(Mlp& net, const MlpGrads& grads, AdamState& state, double lr,
               const AdamConfig& cfg = {});

}  // namespace pathrl::nn
