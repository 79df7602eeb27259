#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pathrl/agent.hpp"
#include "pathrl/env.hpp"
#include "pathrl/noise.hpp"

namespace pathrl {

// Flat run configuration. Every tunable has a default; a config file only
// overrides. Angles are written in degrees in the file and converted on
// load. Unknown keys are rejected.
struct RunConfig {
  // simulation
  double dt = 0.05;
  double wheelbase = 2.9;
  double delta_max_deg = 30.0;
  double ddelta_max_deg = 40.0;
  double a_max = 5.0;

  // path generation
  double v_avg_min = 3.0;
  double v_avg_max = 20.0;
  double steer_sample_max_deg = 30.0;
  double accel_above_min = -2.0;
  double accel_above_max = 2.0;
  double accel_below_min = 0.0;
  double accel_below_max = 2.0;
  double target_length = 400.0;
  double waypoint_spacing = 1.0;

  // environment
  int lookahead = 25;
  double cte_terminate = 2.0;
  int max_episode_steps = 4000;

  // networks
  std::vector<int> actor_trunk = {256, 256};
  int actor_branch = 64;
  std::vector<int> critic_hidden = {256, 256};

  // agent
  double gamma = 0.99;
  double rho = 0.005;
  int batch_size = 64;
  double actor_lr = 1e-4;
  double critic_lr = 1e-3;
  int updates_per_step = 1;
  double grad_clip_norm = 0.0;
  int replay_capacity = 100000;

  // exploration
  int explore_episodes = 500;
  double noise_decay = 0.9996;
  double noise_sd_sigma2 = 0.05;
  double noise_sd_amplitude = 0.3;
  double noise_sd_omega = 0.05;

  // run schedule and output
  int epochs = 10;
  int episodes_per_epoch = 500;
  double lr_decay = 0.7;
  std::uint64_t seed = 0;
  int checkpoint_every = 100;
  bool persist_replay = false;
  std::string out_dir = "run";

  int total_episodes() const { return epochs * episodes_per_epoch; }

  VehicleLimits vehicle_limits() const;
  PathGenConfig pathgen_config() const;
  EnvConfig env_config() const;
  AgentConfig agent_config() const;
  NoiseSchedule noise_schedule() const;

  // Throws std::invalid_argument with a description when out of range.
  void validate() const;
};

// Parses "key = value" lines ('#' comments, blank lines allowed) on top of
// the defaults. Throws std::runtime_error on unknown keys or bad values.
RunConfig parse_config(std::istream& in);
RunConfig load_config_file(const std::filesystem::path& file);

// Writes every key with its current value, suitable for parse_config.
void write_config(const RunConfig& cfg, std::ostream& out);

}  // namespace pathrl
