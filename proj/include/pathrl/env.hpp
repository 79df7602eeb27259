#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <utility>
#include <vector>

#include "pathrl/path.hpp"
#include "pathrl/vehicle.hpp"

namespace pathrl {

// Feature vector fed to the actor, length 3*lookahead + 2. Layout with the
// default lookahead of 25 waypoints (77 entries total):
//   [0..49]   (x', y') of each future waypoint in the agent frame, by
//             increasing arclength
//   [50..74]  v - v_ref_i for each of those waypoints
//   [75]      current speed v
//   [76]      current steering angle delta
using Observation = Eigen::VectorXd;

// Normalized commands; both components are clipped to [-1, 1] before being
// scaled by the steering/acceleration limits.
struct Action {
  double steer = 0.0;
  double accel = 0.0;
};

struct EnvConfig {
  VehicleLimits limits;
  PathGenConfig pathgen;
  int lookahead = 25;           // waypoints in the observation
  double cte_terminate = 2.0;   // [m]
  int max_steps = 4000;         // hard episode cap, not a terminal state

  int obs_dim() const { return 3 * lookahead + 2; }
};

// Per-step diagnostics, also the unit episode traces are built from.
struct StepInfo {
  double cte = 0.0;       // [m]
  double v_err = 0.0;     // v - v_ref [m/s]
  double v_ref = 0.0;     // [m/s]
  double progress = 0.0;  // projected arclength / total_length, in [0, 1]
  double reward = 0.0;
  VehicleState state;
};

struct StepResult {
  Observation obs;
  double reward = 0.0;
  bool terminal = false;      // the Bellman mask d: crash or speed collapse
  bool episode_over = false;  // terminal, path completed, or step cap hit
  StepInfo info;
};

// Global -> agent-frame coordinates of a waypoint: translate by the vehicle
// position, rotate by -heading.
std::pair<double, double> to_agent_frame(const VehicleState& state,
                                         const Waypoint& wp);

// Shaped tracking reward. Returns -1 when the cross-track error exceeds
// 0.2 m, otherwise 1.5 minus penalties on cte, steering magnitude, relative
// speed error and commanded acceleration; in both branches one extra unit is
// subtracted when the relative speed error exceeds 25%. The v_ref
// denominator is floored at 1 m/s and the result is clamped to [-2, 1.5].
double compute_reward(double cte, double delta_t, double v_t, double v_ref,
                      double a_req_norm, double delta_max);

struct EpisodeMetrics {
  double avg_cte = 0.0;
  double max_cte = 0.0;
  double avg_dv = 0.0;
  double max_dv = 0.0;
  double pct_complete = 0.0;
};

// Per-step means/maxima of cte and |v - v_ref| plus completion percentage,
// taken from a nonempty episode trace.
EpisodeMetrics episode_metrics(const std::vector<StepInfo>& trace);

// Path-following episode: reset() generates a fresh random path and places
// the vehicle on its first waypoint at reference speed; step() advances one
// control period. One instance is single-threaded; independent instances
// may run concurrently.
class Environment {
 public:
  explicit Environment(EnvConfig cfg);

  // Fresh episode on a newly generated path, deterministic in `seed`.
  Observation reset(std::uint64_t seed);
  // Episode on an externally supplied path (evaluation on fixed tracks).
  Observation reset_on(ReferencePath path);

  // Advances one step. Throws std::logic_error if the episode is over or
  // reset() was never called.
  StepResult step(const Action& action);

  const ReferencePath& path() const { return path_; }
  const VehicleState& state() const { return state_; }
  bool episode_over() const { return episode_over_; }
  int steps() const { return steps_; }
  const EnvConfig& config() const { return cfg_; }

 private:
  Observation build_observation() const;

  EnvConfig cfg_;
  ReferencePath path_;
  VehicleState state_;
  std::size_t proj_index_ = 0;
  int steps_ = 0;
  bool has_episode_ = false;
  bool episode_over_ = false;
};

}  // namespace pathrl
