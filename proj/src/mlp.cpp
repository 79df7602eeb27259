#include "pathrl/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace pathrl::nn {

const char* activation_name(Activation a) {
  switch (a) {
    case Activation::kRelu: return "relu";
    case Activation::kTanh: return "tanh";
    case Activation::kIdentity: return "identity";
  }
  throw std::logic_error("activation_name: bad tag");
}

Activation activation_from_name(const std::string& name) {
  if (name == "relu") return Activation::kRelu;
  if (name == "tanh") return Activation::kTanh;
  if (name == "identity") return Activation::kIdentity;
  throw std::runtime_error("unknown activation: " + name);
}

bool Mlp::all_finite() const {
  for (const Layer& l : layers) {
    if (!l.W.allFinite() || !l.b.allFinite()) return false;
  }
  return true;
}

bool Mlp::same_shape(const Mlp& other) const {
  if (layers.size() != other.layers.size()) return false;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (layers[i].W.rows() != other.layers[i].W.rows() ||
        layers[i].W.cols() != other.layers[i].W.cols() ||
        layers[i].act != other.layers[i].act) {
      return false;
    }
  }
  return true;
}

Mlp make_mlp(int input, const std::vector<LayerSpec>& spec,
             std::mt19937_64& rng, bool near_zero_final, double final_bound) {
  if (input < 1 || spec.empty()) {
    throw std::invalid_argument("make_mlp: bad shape");
  }
  Mlp net;
  int in = input;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (spec[i].width < 1) throw std::invalid_argument("make_mlp: bad width");
    const bool final_layer = near_zero_final && i + 1 == spec.size();
    const double bound =
        final_layer ? final_bound : 1.0 / std::sqrt(static_cast<double>(in));
    std::uniform_real_distribution<double> dist(-bound, bound);
    Layer layer;
    layer.W.resize(spec[i].width, in);
    layer.b.resize(spec[i].width);
    // Fill in a fixed row-major order so a seed pins the parameters exactly.
    for (Eigen::Index r = 0; r < layer.W.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.W.cols(); ++c) {
        layer.W(r, c) = dist(rng);
      }
    }
    for (Eigen::Index r = 0; r < layer.b.size(); ++r) layer.b(r) = dist(rng);
    layer.act = spec[i].act;
    net.layers.push_back(std::move(layer));
    in = spec[i].width;
  }
  return net;
}

namespace {

inline void apply_activation(Activation act, Eigen::MatrixXd& z) {
  switch (act) {
    case Activation::kRelu:
      z = z.cwiseMax(0.0);
      break;
    case Activation::kTanh:
      z = z.array().tanh().matrix();
      break;
    case Activation::kIdentity:
      break;
  }
}

// dy <- dy .* act'(z), using the pre-activation z.
inline void chain_activation(Activation act, const Eigen::MatrixXd& z,
                             Eigen::MatrixXd& dy) {
  switch (act) {
    case Activation::kRelu:
      dy = (z.array() > 0.0).select(dy, 0.0);
      break;
    case Activation::kTanh: {
      Eigen::ArrayXXd th = z.array().tanh();
      dy = (dy.array() * (1.0 - th * th)).matrix();
      break;
    }
    case Activation::kIdentity:
      break;
  }
}

}  // namespace

Eigen::MatrixXd forward(const Mlp& net, const Eigen::MatrixXd& x,
                        ForwardCache* cache) {
  if (net.layers.empty()) throw std::invalid_argument("forward: empty net");
  if (x.rows() != net.input_size()) {
    throw std::invalid_argument("forward: input size mismatch");
  }
  if (!x.allFinite()) throw std::invalid_argument("forward: non-finite input");

  if (cache) {
    cache->inputs.clear();
    cache->preacts.clear();
    cache->inputs.reserve(net.layers.size());
    cache->preacts.reserve(net.layers.size());
  }

  Eigen::MatrixXd a = x;
  for (const Layer& layer : net.layers) {
    if (cache) cache->inputs.push_back(a);
    Eigen::MatrixXd z = (layer.W * a).colwise() + layer.b;
    if (cache) cache->preacts.push_back(z);
    apply_activation(layer.act, z);
    a = std::move(z);
  }
  return a;
}

MlpGrads MlpGrads::zeros_like(const Mlp& net) {
  MlpGrads g;
  g.dW.reserve(net.layers.size());
  g.db.reserve(net.layers.size());
  for (const Layer& l : net.layers) {
    g.dW.push_back(Eigen::MatrixXd::Zero(l.W.rows(), l.W.cols()));
    g.db.push_back(Eigen::VectorXd::Zero(l.b.size()));
  }
  return g;
}

void MlpGrads::scale(double factor) {
  for (auto& m : dW) m *= factor;
  for (auto& v : db) v *= factor;
}

double MlpGrads::squared_norm() const {
  double sum = 0.0;
  for (const auto& m : dW) sum += m.squaredNorm();
  for (const auto& v : db) sum += v.squaredNorm();
  return sum;
}

Eigen::MatrixXd backward(const Mlp& net, const ForwardCache& cache,
                         const Eigen::MatrixXd& dy, MlpGrads* grads) {
  if (cache.inputs.size() != net.layers.size()) {
    throw std::invalid_argument("backward: cache does not match net");
  }
  if (dy.rows() != net.output_size() ||
      dy.cols() != cache.inputs.front().cols()) {
    throw std::invalid_argument("backward: dy shape mismatch");
  }

  Eigen::MatrixXd delta = dy;
  for (std::size_t li = net.layers.size(); li-- > 0;) {
    const Layer& layer = net.layers[li];
    chain_activation(layer.act, cache.preacts[li], delta);
    if (grads) {
      grads->dW[li].noalias() += delta * cache.inputs[li].transpose();
      grads->db[li] += delta.rowwise().sum();
    }
    if (li > 0) {
      delta = layer.W.transpose() * delta;
    } else {
      Eigen::MatrixXd dx = layer.W.transpose() * delta;
      return dx;
    }
  }
  throw std::logic_error("backward: unreachable");
}

}  // namespace pathrl::nn
