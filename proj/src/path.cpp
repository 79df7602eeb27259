#include "pathrl/path.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "pathrl/seeds.hpp"

namespace pathrl {
namespace {

struct TrajPoint {
  double x, y, v;
};

// One rollout attempt; returns an empty vector if the speed collapsed.
std::vector<TrajPoint> roll_trajectory(const PathGenConfig& cfg,
                                       const VehicleLimits& limits,
                                       std::mt19937_64& rng) {
  std::uniform_real_distribution<double> v_avg_dist(cfg.v_avg_min,
                                                    cfg.v_avg_max);
  std::uniform_real_distribution<double> steer_dist(-cfg.steer_cmd_max,
                                                    cfg.steer_cmd_max);
  std::uniform_real_distribution<double> accel_above(cfg.accel_above_min,
                                                     cfg.accel_above_max);
  std::uniform_real_distribution<double> accel_below(cfg.accel_below_min,
                                                     cfg.accel_below_max);

  const double v_avg = v_avg_dist(rng);

  VehicleState state;
  state.v = v_avg;

  std::vector<TrajPoint> traj;
  traj.push_back({state.x, state.y, state.v});

  // Roll far enough that the resampled path still reaches target_length
  // after truncation to a whole number of spacings.
  const double needed =
      cfg.waypoint_spacing *
      std::ceil(cfg.target_length / cfg.waypoint_spacing);

  double length = 0.0;
  // Speed stays near v_avg, so the step count is bounded; the cap only
  // guards against degenerate configs.
  const std::size_t max_steps =
      static_cast<std::size_t>(needed / (0.01 * limits.dt)) + 1000;
  for (std::size_t step = 0; length < needed; ++step) {
    if (step > max_steps) return {};
    const double delta_req = steer_dist(rng);
    const double a_req =
        state.v > v_avg ? accel_above(rng) : accel_below(rng);
    const VehicleState next = step_vehicle(state, delta_req, a_req, limits);
    if (next.v <= 0.0) return {};
    length += std::hypot(next.x - state.x, next.y - state.y);
    traj.push_back({next.x, next.y, next.v});
    state = next;
  }
  return traj;
}

ReferencePath resample(const std::vector<TrajPoint>& traj, double spacing) {
  ReferencePath path;
  path.waypoints.push_back({traj[0].x, traj[0].y, traj[0].v, 0.0});

  double s_acc = 0.0;        // arclength at the start of the current segment
  double s_next = spacing;   // arclength of the next waypoint to emit
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
    const TrajPoint& a = traj[i];
    const TrajPoint& b = traj[i + 1];
    const double seg = std::hypot(b.x - a.x, b.y - a.y);
    if (seg <= 0.0) continue;
    while (s_next <= s_acc + seg) {
      const double t = (s_next - s_acc) / seg;
      Waypoint wp;
      wp.x = a.x + t * (b.x - a.x);
      wp.y = a.y + t * (b.y - a.y);
      wp.v_ref = a.v + t * (b.v - a.v);
      wp.s = s_next;
      path.waypoints.push_back(wp);
      s_next += spacing;
    }
    s_acc += seg;
  }
  path.total_length = path.waypoints.back().s;
  return path;
}

}  // namespace

ReferencePath generate_path(const PathGenConfig& cfg,
                            const VehicleLimits& limits, std::uint64_t seed) {
  if (!cfg.valid()) throw std::invalid_argument("generate_path: bad config");
  if (!limits.valid()) throw std::invalid_argument("generate_path: bad limits");

  for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
    auto rng = make_rng(seed, SeedStream::kPathRetry,
                        static_cast<std::uint64_t>(attempt));
    const auto traj = roll_trajectory(cfg, limits, rng);
    if (traj.empty()) continue;
    ReferencePath path = resample(traj, cfg.waypoint_spacing);
    if (path.size() < 2 || path.total_length < cfg.target_length) continue;
    return path;
  }
  throw std::runtime_error(
      "generate_path: rollout speed collapsed on every attempt");
}

PathProjection project_onto_path(const ReferencePath& path, double x,
                                 double y, std::size_t hint_index) {
  if (path.size() < 2) {
    throw std::invalid_argument("project_onto_path: path too short");
  }
  const std::size_t last_seg = path.size() - 2;
  const std::size_t start = std::min(hint_index, last_seg);

  PathProjection best;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = start; i <= last_seg; ++i) {
    const Waypoint& a = path.waypoints[i];
    const Waypoint& b = path.waypoints[i + 1];
    const double ex = b.x - a.x;
    const double ey = b.y - a.y;
    const double len2 = ex * ex + ey * ey;
    double t = len2 > 0.0 ? ((x - a.x) * ex + (y - a.y) * ey) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double px = a.x + t * ex;
    const double py = a.y + t * ey;
    const double d2 = (x - px) * (x - px) + (y - py) * (y - py);
    if (d2 < best_d2) {
      best_d2 = d2;
      best.index = i;
      best.t = t;
      best.s = a.s + t * (b.s - a.s);
      best.v_ref = a.v_ref + t * (b.v_ref - a.v_ref);
    }
  }
  best.cte = std::sqrt(best_d2);
  return best;
}

std::vector<Waypoint> future_waypoints(const ReferencePath& path,
                                       std::size_t index, std::size_t k) {
  if (path.empty()) {
    throw std::invalid_argument("future_waypoints: empty path");
  }
  std::vector<Waypoint> out;
  out.reserve(k);
  for (std::size_t j = 1; j <= k; ++j) {
    const std::size_t i = std::min(index + j, path.size() - 1);
    out.push_back(path.waypoints[i]);
  }
  return out;
}

void save_path(const ReferencePath& path, std::ostream& out) {
  out << "# pathrl path v1\n# s x y v_ref\n";
  char buf[160];
  for (const Waypoint& wp : path.waypoints) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g %.17g\n", wp.s, wp.x,
                  wp.y, wp.v_ref);
    out << buf;
  }
}

ReferencePath load_path(std::istream& in) {
  ReferencePath path;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    Waypoint wp;
    if (!(ls >> wp.s >> wp.x >> wp.y >> wp.v_ref)) {
      throw std::runtime_error("load_path: malformed record: " + line);
    }
    if (!path.waypoints.empty() && wp.s <= path.waypoints.back().s) {
      throw std::runtime_error("load_path: arclength not increasing");
    }
    path.waypoints.push_back(wp);
  }
  if (path.size() < 2) throw std::runtime_error("load_path: too few waypoints");
  path.total_length = path.waypoints.back().s;
  return path;
}

void save_path_file(const ReferencePath& path,
                    const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot open for write: " + file.string());
  save_path(path, out);
}

ReferencePath load_path_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open for read: " + file.string());
  return load_path(in);
}

}  // namespace pathrl
