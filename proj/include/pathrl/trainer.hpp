#pragma once

#include <cstdint>

#include "pathrl/agent.hpp"
#include "pathrl/config.hpp"
#include "pathrl/env.hpp"
#include "pathrl/metrics.hpp"
#include "pathrl/noise.hpp"
#include "pathrl/replay.hpp"

namespace pathrl {

struct EpisodeStats {
  int steps = 0;
  double return_sum = 0.0;
  double cte_sum = 0.0;
  double abs_dv_sum = 0.0;
  double travelled_m = 0.0;
  double completion_pct = 0.0;
  bool terminal = false;
  double critic_loss_sum = 0.0;
  double actor_objective_sum = 0.0;
  int updates = 0;
};

// One training episode: behavior action per step (uniform during the
// explore block, actor + sinusoidal noise afterwards), transition pushed,
// then updates_per_step learner updates once the buffer can fill a batch.
// All randomness is derived from (run_seed, episode_index), so a given
// episode replays exactly.
EpisodeStats train_episode(Environment& env, DdpgAgent& agent,
                           ReplayBuffer& buffer, const NoiseSchedule& schedule,
                           std::int64_t episode_index, std::uint64_t run_seed);

// Full training run per the config schedule: writes metrics.csv, epoch and
// cadence checkpoints, and a per-epoch summary under cfg.out_dir. With
// `resume`, continues from checkpoint_latest.txt in the output directory.
// Throws on config or I/O failure.
void run_training(const RunConfig& cfg, bool resume);

MetricsRecord to_metrics_record(const EpisodeStats& stats,
                                std::int64_t episode, double noise_multiplier);

}  // namespace pathrl
