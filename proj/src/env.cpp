#include "pathrl/env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pathrl/seeds.hpp"

namespace pathrl {

std::pair<double, double> to_agent_frame(const VehicleState& state,
                                         const Waypoint& wp) {
  const double dx = wp.x - state.x;
  const double dy = wp.y - state.y;
  const double c = std::cos(state.theta);
  const double s = std::sin(state.theta);
  return {c * dx + s * dy, -s * dx + c * dy};
}

double compute_reward(double cte, double delta_t, double v_t, double v_ref,
                      double a_req_norm, double delta_max) {
  const double v_den = std::max(v_ref, 1.0);
  const double rel_v_err = std::abs(v_t - v_ref) / v_den;

  double r;
  if (cte > 0.2) {
    r = -1.0;
  } else {
    r = 1.5 - 0.8 * cte - 0.1 * std::abs(delta_t) / delta_max -
        0.8 * rel_v_err - 0.2 * std::abs(a_req_norm);
  }
  if (rel_v_err > 0.25) r -= 1.0;
  return std::max(r, -2.0);
}

EpisodeMetrics episode_metrics(const std::vector<StepInfo>& trace) {
  if (trace.empty()) throw std::invalid_argument("episode_metrics: empty trace");
  EpisodeMetrics m;
  for (const StepInfo& info : trace) {
    m.avg_cte += info.cte;
    m.max_cte = std::max(m.max_cte, info.cte);
    m.avg_dv += std::abs(info.v_err);
    m.max_dv = std::max(m.max_dv, std::abs(info.v_err));
  }
  m.avg_cte /= static_cast<double>(trace.size());
  m.avg_dv /= static_cast<double>(trace.size());
  m.pct_complete = 100.0 * trace.back().progress;
  return m;
}

Environment::Environment(EnvConfig cfg) : cfg_(std::move(cfg)) {
  if (!cfg_.limits.valid() || !cfg_.pathgen.valid() || cfg_.lookahead < 1 ||
      cfg_.cte_terminate <= 0.0 || cfg_.max_steps < 1) {
    throw std::invalid_argument("Environment: invalid config");
  }
}

Observation Environment::reset(std::uint64_t seed) {
  return reset_on(generate_path(cfg_.pathgen, cfg_.limits, seed));
}

Observation Environment::reset_on(ReferencePath path) {
  if (path.size() < 2) throw std::invalid_argument("reset_on: path too short");
  path_ = std::move(path);

  const Waypoint& w0 = path_.waypoints[0];
  const Waypoint& w1 = path_.waypoints[1];
  state_ = VehicleState{};
  state_.x = w0.x;
  state_.y = w0.y;
  state_.v = w0.v_ref;
  state_.delta = 0.0;
  state_.theta = std::atan2(w1.y - w0.y, w1.x - w0.x);

  proj_index_ = 0;
  steps_ = 0;
  has_episode_ = true;
  episode_over_ = false;
  return build_observation();
}

StepResult Environment::step(const Action& action) {
  if (!has_episode_) throw std::logic_error("step: reset() never called");
  if (episode_over_) throw std::logic_error("step: episode is over");

  const double steer = std::clamp(action.steer, -1.0, 1.0);
  const double accel = std::clamp(action.accel, -1.0, 1.0);
  const double delta_req = steer * cfg_.limits.delta_max;
  const double a_req = accel * cfg_.limits.a_max;

  state_ = step_vehicle(state_, delta_req, a_req, cfg_.limits);
  const PathProjection proj =
      project_onto_path(path_, state_.x, state_.y, proj_index_);
  proj_index_ = proj.index;
  ++steps_;

  StepResult result;
  result.reward = compute_reward(proj.cte, state_.delta, state_.v, proj.v_ref,
                                 accel, cfg_.limits.delta_max);

  const bool crashed = proj.cte >= cfg_.cte_terminate;
  const bool stalled = state_.v <= 0.0;
  const bool completed = proj.s >= path_.total_length - 1e-9;
  result.terminal = crashed || stalled;
  result.episode_over =
      result.terminal || completed || steps_ >= cfg_.max_steps;
  episode_over_ = result.episode_over;

  result.info.cte = proj.cte;
  result.info.v_err = state_.v - proj.v_ref;
  result.info.v_ref = proj.v_ref;
  result.info.progress = proj.s / path_.total_length;
  result.info.reward = result.reward;
  result.info.state = state_;
  result.obs = build_observation();
  return result;
}

Observation Environment::build_observation() const {
  const int k = cfg_.lookahead;
  Observation obs(cfg_.obs_dim());
  const auto ahead =
      future_waypoints(path_, proj_index_, static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const auto [xr, yr] = to_agent_frame(state_, ahead[i]);
    obs[2 * i] = xr;
    obs[2 * i + 1] = yr;
  }
  for (int i = 0; i < k; ++i) {
    obs[2 * k + i] = state_.v - ahead[i].v_ref;
  }
  obs[3 * k] = state_.v;
  obs[3 * k + 1] = state_.delta;
  return obs;
}

}  // namespace pathrl
