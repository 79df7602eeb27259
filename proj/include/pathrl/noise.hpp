#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "pathrl/env.hpp"

namespace pathrl {

// Per-episode parameters of the sinusoidal exploration noise. The additive
// noise on each action component is Gaussian with a slowly oscillating mean
// A*sin(omega*t + phase); everything here stays constant for one episode.
struct SinusoidNoiseEpisodeParams {
  double sigma2 = 0.0;       // Gaussian variance around the sinusoid
  double amplitude = 0.0;    // A
  double omega = 0.0;        // [rad/step]
  double phase_steer = 0.0;  // in (-pi, pi]
  double phase_accel = 0.0;  // in (-pi, pi]
};

// Exploration schedule across training: an initial block of episodes with
// uniform random actions, then actor + sinusoidal noise whose global
// amplitude multiplier decays geometrically per episode.
struct NoiseSchedule {
  double decay = 0.9996;
  int explore_episodes = 500;
  // Standard deviations of the zero-mean Gaussians the per-episode noise
  // parameters are drawn from.
  double sd_sigma2 = 0.05;
  double sd_amplitude = 0.3;
  double sd_omega = 0.05;

  std::int64_t episodes_done = 0;

  // decay^episodes_done, computed closed-form so it is exact and trivially
  // restored on resume.
  double multiplier() const;
};

// Draws the episode-constant noise parameters. sigma2 and amplitude take
// the absolute value of their Gaussian draw; omega keeps its sign; phases
// are uniform on (-pi, pi].
SinusoidNoiseEpisodeParams begin_episode(const NoiseSchedule& schedule,
                                         std::mt19937_64& rng);

// One per-step draw (eps_steer, eps_accel); the multiplier scales the whole
// sample, mean and deviation together.
std::pair<double, double> noise_at(const SinusoidNoiseEpisodeParams& params,
                                   int t, double multiplier,
                                   std::mt19937_64& rng);

// Behavior policy: uniform on (-1,1)^2 during the explore block (the actor
// output is ignored), afterwards actor output plus sinusoidal noise, clipped
// back to [-1, 1] per component.
Action select_action(const Action& actor_out, std::int64_t episode_index,
                     const NoiseSchedule& schedule,
                     const SinusoidNoiseEpisodeParams& params, int t,
                     std::mt19937_64& rng);

// Advances the schedule by one finished episode.
void end_episode(NoiseSchedule& schedule);

}  // namespace pathrl
