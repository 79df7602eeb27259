#include "pathrl/checkpoint.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace pathrl {
namespace {

void fail(const std::string& what) {
  throw std::runtime_error("checkpoint: " + what);
}

void expect_token(std::istream& in, const char* want) {
  std::string tok;
  if (!(in >> tok) || tok != want) {
    fail("expected '" + std::string(want) + "', got '" + tok + "'");
  }
}

void write_value(std::ostream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out << buf;
}

void write_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  out << "matrix " << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      write_value(out, m(r, c));
    }
    out << '\n';
  }
}

Eigen::MatrixXd read_matrix(std::istream& in) {
  expect_token(in, "matrix");
  Eigen::Index rows, cols;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0) fail("bad matrix dims");
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (!(in >> m(r, c))) fail("bad matrix value");
    }
  }
  return m;
}

void write_vector(std::ostream& out, const Eigen::VectorXd& v) {
  out << "vector " << v.size() << '\n';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out << ' ';
    write_value(out, v[i]);
  }
  out << '\n';
}

Eigen::VectorXd read_vector(std::istream& in) {
  expect_token(in, "vector");
  Eigen::Index n;
  if (!(in >> n) || n < 0) fail("bad vector size");
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(in >> v[i])) fail("bad vector value");
  }
  return v;
}

void write_mlp(std::ostream& out, const char* name, const nn::Mlp& net) {
  out << "net " << name << '\n' << "layers " << net.layers.size() << '\n';
  for (const nn::Layer& l : net.layers) {
    out << "activation " << nn::activation_name(l.act) << '\n';
    write_matrix(out, l.W);
    write_vector(out, l.b);
  }
}

nn::Mlp read_mlp(std::istream& in, const char* name) {
  expect_token(in, "net");
  expect_token(in, name);
  expect_token(in, "layers");
  std::size_t count;
  if (!(in >> count) || count == 0) fail("bad layer count");
  nn::Mlp net;
  for (std::size_t i = 0; i < count; ++i) {
    expect_token(in, "activation");
    std::string act;
    if (!(in >> act)) fail("missing activation");
    nn::Layer layer;
    layer.act = nn::activation_from_name(act);
    layer.W = read_matrix(in);
    Eigen::VectorXd b = read_vector(in);
    if (b.size() != layer.W.rows()) fail("bias/weight shape mismatch");
    layer.b = std::move(b);
    if (i > 0 && layer.W.cols() != net.layers.back().W.rows()) {
      fail("layer dimensions do not compose");
    }
    net.layers.push_back(std::move(layer));
  }
  return net;
}

void write_adam(std::ostream& out, const char* name,
                const nn::AdamState& state) {
  out << "adam " << name << '\n'
      << "step " << state.step << '\n'
      << "layers " << state.mW.size() << '\n';
  for (std::size_t i = 0; i < state.mW.size(); ++i) {
    write_matrix(out, state.mW[i]);
    write_matrix(out, state.vW[i]);
    write_vector(out, state.mb[i]);
    write_vector(out, state.vb[i]);
  }
}

nn::AdamState read_adam(std::istream& in, const char* name,
                        const nn::Mlp& net) {
  expect_token(in, "adam");
  expect_token(in, name);
  expect_token(in, "step");
  nn::AdamState state;
  if (!(in >> state.step) || state.step < 0) fail("bad adam step");
  expect_token(in, "layers");
  std::size_t count;
  if (!(in >> count) || count != net.layers.size()) fail("adam layer count");
  for (std::size_t i = 0; i < count; ++i) {
    state.mW.push_back(read_matrix(in));
    state.vW.push_back(read_matrix(in));
    state.mb.push_back(read_vector(in));
    state.vb.push_back(read_vector(in));
    if (state.mW[i].rows() != net.layers[i].W.rows() ||
        state.mW[i].cols() != net.layers[i].W.cols()) {
      fail("adam moment shape mismatch");
    }
  }
  return state;
}

void write_actor(std::ostream& out, const std::string& prefix,
                 const nn::Actor& actor) {
  write_mlp(out, (prefix + ".trunk").c_str(), actor.trunk);
  write_mlp(out, (prefix + ".steer").c_str(), actor.steer_head);
  write_mlp(out, (prefix + ".accel").c_str(), actor.accel_head);
}

nn::Actor read_actor(std::istream& in, const std::string& prefix) {
  nn::Actor actor;
  actor.trunk = read_mlp(in, (prefix + ".trunk").c_str());
  actor.steer_head = read_mlp(in, (prefix + ".steer").c_str());
  actor.accel_head = read_mlp(in, (prefix + ".accel").c_str());
  return actor;
}

}  // namespace

void save_checkpoint(const Checkpoint& ckpt, std::ostream& out) {
  out << "pathrl-checkpoint 1\n";
  out << "episodes_done " << ckpt.episodes_done << '\n';
  out << "actor_lr ";
  write_value(out, ckpt.actor_lr);
  out << "\ncritic_lr ";
  write_value(out, ckpt.critic_lr);
  out << '\n';
  write_actor(out, "actor", ckpt.actor);
  write_actor(out, "actor_target", ckpt.actor_target);
  write_mlp(out, "critic", ckpt.critic);
  write_mlp(out, "critic_target", ckpt.critic_target);
  write_adam(out, "actor.trunk", ckpt.actor_adam.trunk);
  write_adam(out, "actor.steer", ckpt.actor_adam.steer);
  write_adam(out, "actor.accel", ckpt.actor_adam.accel);
  write_adam(out, "critic", ckpt.critic_adam);
  out << "end\n";
}

Checkpoint load_checkpoint(std::istream& in) {
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != "pathrl-checkpoint" ||
      version != 1) {
    fail("bad header");
  }
  Checkpoint ckpt;
  expect_token(in, "episodes_done");
  if (!(in >> ckpt.episodes_done) || ckpt.episodes_done < 0) {
    fail("bad episodes_done");
  }
  expect_token(in, "actor_lr");
  if (!(in >> ckpt.actor_lr)) fail("bad actor_lr");
  expect_token(in, "critic_lr");
  if (!(in >> ckpt.critic_lr)) fail("bad critic_lr");
  ckpt.actor = read_actor(in, "actor");
  ckpt.actor_target = read_actor(in, "actor_target");
  ckpt.critic = read_mlp(in, "critic");
  ckpt.critic_target = read_mlp(in, "critic_target");
  if (!ckpt.actor.same_shape(ckpt.actor_target) ||
      !ckpt.critic.same_shape(ckpt.critic_target)) {
    fail("main/target shape mismatch");
  }
  ckpt.actor_adam.trunk = read_adam(in, "actor.trunk", ckpt.actor.trunk);
  ckpt.actor_adam.steer = read_adam(in, "actor.steer", ckpt.actor.steer_head);
  ckpt.actor_adam.accel = read_adam(in, "actor.accel", ckpt.actor.accel_head);
  ckpt.critic_adam = read_adam(in, "critic", ckpt.critic);
  expect_token(in, "end");
  return ckpt;
}

void save_checkpoint_file(const Checkpoint& ckpt,
                          const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) fail("cannot open for write: " + file.string());
  save_checkpoint(ckpt, out);
  if (!out) fail("write failed: " + file.string());
}

Checkpoint load_checkpoint_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) fail("cannot open for read: " + file.string());
  return load_checkpoint(in);
}

}  // namespace pathrl
