#include "pathrl/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pathrl {

double NoiseSchedule::multiplier() const {
  return std::pow(decay, static_cast<double>(episodes_done));
}

SinusoidNoiseEpisodeParams begin_episode(const NoiseSchedule& schedule,
                                         std::mt19937_64& rng) {
  std::normal_distribution<double> sigma2_dist(0.0, schedule.sd_sigma2);
  std::normal_distribution<double> amplitude_dist(0.0, schedule.sd_amplitude);
  std::normal_distribution<double> omega_dist(0.0, schedule.sd_omega);
  std::uniform_real_distribution<double> phase_dist(-std::numbers::pi,
                                                    std::numbers::pi);
  SinusoidNoiseEpisodeParams p;
  p.sigma2 = std::abs(sigma2_dist(rng));
  p.amplitude = std::abs(amplitude_dist(rng));
  p.omega = omega_dist(rng);
  // The distribution samples [-pi, pi); negating lands in (-pi, pi].
  p.phase_steer = -phase_dist(rng);
  p.phase_accel = -phase_dist(rng);
  return p;
}

std::pair<double, double> noise_at(const SinusoidNoiseEpisodeParams& params,
                                   int t, double multiplier,
                                   std::mt19937_64& rng) {
  const double sd = std::sqrt(params.sigma2);
  std::normal_distribution<double> unit(0.0, 1.0);
  const double mean_steer =
      params.amplitude * std::sin(params.omega * t + params.phase_steer);
  const double mean_accel =
      params.amplitude * std::sin(params.omega * t + params.phase_accel);
  const double eps_steer = multiplier * (mean_steer + sd * unit(rng));
  const double eps_accel = multiplier * (mean_accel + sd * unit(rng));
  return {eps_steer, eps_accel};
}

Action select_action(const Action& actor_out, std::int64_t episode_index,
                     const NoiseSchedule& schedule,
                     const SinusoidNoiseEpisodeParams& params, int t,
                     std::mt19937_64& rng) {
  if (episode_index < schedule.explore_episodes) {
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    Action a;
    a.steer = uniform(rng);
    a.accel = uniform(rng);
    return a;
  }
  const auto [eps_steer, eps_accel] =
      noise_at(params, t, schedule.multiplier(), rng);
  Action a;
  a.steer = std::clamp(actor_out.steer + eps_steer, -1.0, 1.0);
  a.accel = std::clamp(actor_out.accel + eps_accel, -1.0, 1.0);
  return a;
}

void end_episode(NoiseSchedule& schedule) { schedule.episodes_done += 1; }

}  // namespace pathrl
