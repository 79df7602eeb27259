#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace pathrl::nn {

enum class Activation { kRelu, kTanh, kIdentity };

const char* activation_name(Activation a);
Activation activation_from_name(const std::string& name);

struct Layer {
  Eigen::MatrixXd W;  // out x in
  Eigen::VectorXd b;  // out
  Activation act = Activation::kIdentity;
};

// Plain dense network. Parameters are values; forward/backward are pure.
struct Mlp {
  std::vector<Layer> layers;

  Eigen::Index input_size() const { return layers.front().W.cols(); }
  Eigen::Index output_size() const { return layers.back().W.rows(); }
  bool all_finite() const;
  bool same_shape(const Mlp& other) const;
};

struct LayerSpec {
  int width = 0;
  Activation act = Activation::kRelu;
};

// Hidden layers get fan-in-scaled uniform init (+-1/sqrt(fan_in)); when
// near_zero_final is set, the last layer's weights and biases are drawn from
// U(-final_bound, final_bound) instead, which keeps the initial outputs of
// heads essentially zero. Deterministic given the rng state.
Mlp make_mlp(int input, const std::vector<LayerSpec>& spec,
             std::mt19937_64& rng, bool near_zero_final,
             double final_bound = 1e-6);

// Per-layer inputs and pre-activations, enough to run backward().
struct ForwardCache {
  std::vector<Eigen::MatrixXd> inputs;
  std::vector<Eigen::MatrixXd> preacts;
};

// Batched forward pass; columns are samples. Throws std::invalid_argument
// on size mismatch or non-finite input.
Eigen::MatrixXd forward(const Mlp& net, const Eigen::MatrixXd& x,
                        ForwardCache* cache = nullptr);

struct MlpGrads {
  std::vector<Eigen::MatrixXd> dW;
  std::vector<Eigen::VectorXd> db;

  static MlpGrads zeros_like(const Mlp& net);
  void scale(double factor);
  double squared_norm() const;
};

// Exact reverse-mode gradients. `dy` is dL/d(output), out x n; parameter
// gradients are summed over the batch and accumulated into `grads` (which
// may be null when only the input gradient is wanted). Returns dL/d(input).
Eigen::MatrixXd backward(const Mlp& net, const ForwardCache& cache,
                         const Eigen::MatrixXd& dy, MlpGrads* grads);

}  // namespace pathrl::nn
