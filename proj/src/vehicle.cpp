#include "pathrl/vehicle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pathrl {

double wrap_angle(double a) {
  double r = std::remainder(a, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

VehicleState step_vehicle(const VehicleState& state, double delta_req,
                          double a_req, const VehicleLimits& limits) {
  if (!std::isfinite(state.x) || !std::isfinite(state.y) ||
      !std::isfinite(state.v) || !std::isfinite(state.delta) ||
      !std::isfinite(state.theta) || !std::isfinite(delta_req) ||
      !std::isfinite(a_req)) {
    throw std::invalid_argument("step_vehicle: non-finite input");
  }
  if (!limits.valid()) {
    throw std::invalid_argument("step_vehicle: invalid limits");
  }

  const double dt = limits.dt;
  const double ddelta = std::clamp((delta_req - state.delta) / dt,
                                   -limits.ddelta_max, limits.ddelta_max);
  const double a = std::clamp(a_req, -limits.a_max, limits.a_max);

  VehicleState next;
  next.x = state.x + state.v * std::cos(state.theta) * dt;
  next.y = state.y + state.v * std::sin(state.theta) * dt;
  next.v = state.v + a * dt;
  next.delta = std::clamp(state.delta + ddelta * dt, -limits.delta_max,
                          limits.delta_max);
  next.theta = wrap_angle(state.theta +
                          state.v * std::tan(state.delta) / limits.wheelbase * dt);
  return next;
}

}  // namespace pathrl
