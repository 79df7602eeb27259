#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "pathrl/vehicle.hpp"

namespace pathrl {

struct Waypoint {
  double x = 0.0;      // [m]
  double y = 0.0;      // [m]
  double v_ref = 0.0;  // reference speed [m/s], always > 0
  double s = 0.0;      // arclength from path start [m], strictly increasing
};

struct ReferencePath {
  std::vector<Waypoint> waypoints;  // spacing ~= 1 m
  double total_length = 0.0;        // arclength of the last waypoint [m]

  std::size_t size() const { return waypoints.size(); }
  bool empty() const { return waypoints.empty(); }
};

// Sampling ranges for random reference-path generation. Steering requests
// are uniform over +-steer_cmd_max; acceleration requests use the "above"
// range while the rollout speed exceeds the sampled average speed and the
// "below" range otherwise, which keeps the speed hovering around it.
struct PathGenConfig {
  double v_avg_min = 3.0;                  // [m/s]
  double v_avg_max = 20.0;                 // [m/s]
  double steer_cmd_max = deg2rad(30.0);    // [rad]
  double accel_above_min = -2.0;           // [m/s^2]
  double accel_above_max = 2.0;            // [m/s^2]
  double accel_below_min = 0.0;            // [m/s^2]
  double accel_below_max = 2.0;            // [m/s^2]
  double target_length = 400.0;            // [m]
  double waypoint_spacing = 1.0;           // [m]
  int max_retries = 10;

  bool valid() const {
    return v_avg_min > 0.0 && v_avg_max > v_avg_min && steer_cmd_max > 0.0 &&
           accel_above_max >= accel_above_min &&
           accel_below_max >= accel_below_min && target_length > 0.0 &&
           waypoint_spacing > 0.0 && max_retries >= 1;
  }
};

// Rolls the bicycle model under random steering/acceleration requests until
// the trajectory reaches cfg.target_length, then resamples it to waypoints
// every cfg.waypoint_spacing meters, carrying the interpolated rollout speed
// as v_ref. Pure function of (cfg, limits, seed). Retries with a derived
// sub-seed if the rollout speed collapses to zero; throws std::runtime_error
// once max_retries attempts are exhausted.
ReferencePath generate_path(const PathGenConfig& cfg,
                            const VehicleLimits& limits, std::uint64_t seed);

struct PathProjection {
  double cte = 0.0;       // unsigned perpendicular distance [m]
  std::size_t index = 0;  // waypoint index of the segment containing it
  double t = 0.0;         // position along that segment, in [0, 1]
  double s = 0.0;         // arclength of the projected point [m]
  double v_ref = 0.0;     // reference speed there, linearly interpolated
};

// Nearest point on the path polyline, searching only segments at or after
// hint_index so in-episode progress never moves backwards. hint_index is
// clamped to the valid segment range.
PathProjection project_onto_path(const ReferencePath& path, double x,
                                 double y, std::size_t hint_index);

// The k waypoints strictly after `index`, padded by repeating the final
// waypoint when the path ends early, so the result always has k entries.
std::vector<Waypoint> future_waypoints(const ReferencePath& path,
                                       std::size_t index, std::size_t k = 25);

// Plain-text path files: comment header, then one "s x y v_ref" record per
// waypoint. Values round-trip bit-exactly.
void save_path(const ReferencePath& path, std::ostream& out);
ReferencePath load_path(std::istream& in);
void save_path_file(const ReferencePath& path,
                    const std::filesystem::path& file);
ReferencePath load_path_file(const std::filesystem::path& file);

}  // namespace pathrl
