#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

#include "pathrl/env.hpp"

namespace pathrl {

// One (s, a, r, s', d) experience. Observations are stored raw; any input
// conditioning happens at the agent boundary.
struct Transition {
  Eigen::VectorXd s;
  Action a;
  double r = 0.0;
  Eigen::VectorXd s_next;
  bool d = false;
};

// Fixed-capacity ring store sampled uniformly with replacement. Oldest
// entries are overwritten first once full.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(Transition t);
  std::size_t size() const { return size_; }
  std::size_t capacity() const { return storage_.size(); }
  const Transition& at(std::size_t i) const { return storage_[i]; }

  // n independent uniform draws over the currently stored items.
  std::vector<std::size_t> sample_indices(std::size_t n,
                                          std::mt19937_64& rng) const;

  void save_file(const std::filesystem::path& file) const;
  static ReplayBuffer load_file(const std::filesystem::path& file);

 private:
  std::vector<Transition> storage_;
  std::size_t cursor_ = 0;
  std::size_t size_ = 0;
};

}  // namespace pathrl
