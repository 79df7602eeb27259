#pragma once

#include <numbers>

namespace pathrl {

inline constexpr double deg2rad(double deg) {
  return deg * std::numbers::pi / 180.0;
}

// Wrap an angle to (-pi, pi].
double wrap_angle(double a);

// Planar kinematic bicycle state. Heading is kept wrapped to (-pi, pi] and
// the steering angle never exceeds the configured limit after a step.
struct VehicleState {
  double x = 0.0;      // east position [m]
  double y = 0.0;      // north position [m]
  double v = 0.0;      // speed [m/s]
  double delta = 0.0;  // steering angle [rad]
  double theta = 0.0;  // heading [rad]
};

struct VehicleLimits {
  double delta_max = deg2rad(30.0);   // max |steering| [rad]
  double ddelta_max = deg2rad(40.0);  // max |steering rate| [rad/s]
  double a_max = 5.0;                 // max |acceleration| [m/s^2]
  double wheelbase = 2.9;             // axle distance [m]
  double dt = 0.05;                   // integration step [s]

  bool valid() const {
    return delta_max > 0.0 && ddelta_max > 0.0 && a_max > 0.0 &&
           wheelbase > 0.0 && dt > 0.0;
  }
};

// One forward-Euler step of the rate- and magnitude-limited bicycle model.
// The steering request is turned into a rate command clipped to
// +-ddelta_max, the acceleration request is clipped to +-a_max, and all
// right-hand sides use the pre-step state. Throws std::invalid_argument on
// non-finite inputs.
VehicleState step_vehicle(const VehicleState& state, double delta_req,
                          double a_req, const VehicleLimits& limits);

}  // namespace pathrl
