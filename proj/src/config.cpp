#include "pathrl/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pathrl {

VehicleLimits RunConfig::vehicle_limits() const {
  VehicleLimits l;
  l.delta_max = deg2rad(delta_max_deg);
  l.ddelta_max = deg2rad(ddelta_max_deg);
  l.a_max = a_max;
  l.wheelbase = wheelbase;
  l.dt = dt;
  return l;
}

PathGenConfig RunConfig::pathgen_config() const {
  PathGenConfig p;
  p.v_avg_min = v_avg_min;
  p.v_avg_max = v_avg_max;
  p.steer_cmd_max = deg2rad(steer_sample_max_deg);
  p.accel_above_min = accel_above_min;
  p.accel_above_max = accel_above_max;
  p.accel_below_min = accel_below_min;
  p.accel_below_max = accel_below_max;
  p.target_length = target_length;
  p.waypoint_spacing = waypoint_spacing;
  return p;
}

EnvConfig RunConfig::env_config() const {
  EnvConfig e;
  e.limits = vehicle_limits();
  e.pathgen = pathgen_config();
  e.lookahead = lookahead;
  e.cte_terminate = cte_terminate;
  e.max_steps = max_episode_steps;
  return e;
}

AgentConfig RunConfig::agent_config() const {
  AgentConfig a;
  a.obs_dim = 3 * lookahead + 2;
  a.actor_trunk = actor_trunk;
  a.actor_branch = actor_branch;
  a.critic_hidden = critic_hidden;
  a.gamma = gamma;
  a.rho = rho;
  a.batch_size = batch_size;
  a.actor_lr = actor_lr;
  a.critic_lr = critic_lr;
  a.updates_per_step = updates_per_step;
  a.grad_clip_norm = grad_clip_norm;
  a.delta_max = deg2rad(delta_max_deg);
  return a;
}

NoiseSchedule RunConfig::noise_schedule() const {
  NoiseSchedule n;
  n.decay = noise_decay;
  n.explore_episodes = explore_episodes;
  n.sd_sigma2 = noise_sd_sigma2;
  n.sd_amplitude = noise_sd_amplitude;
  n.sd_omega = noise_sd_omega;
  return n;
}

void RunConfig::validate() const {
  auto bad = [](const std::string& what) {
    throw std::invalid_argument("config: " + what);
  };
  if (!vehicle_limits().valid()) bad("vehicle limits must be positive");
  if (!pathgen_config().valid()) bad("path generation ranges are invalid");
  if (lookahead < 1) bad("lookahead must be >= 1");
  if (cte_terminate <= 0.0) bad("cte_terminate must be > 0");
  if (max_episode_steps < 1) bad("max_episode_steps must be >= 1");
  if (actor_trunk.empty() || actor_branch < 1 || critic_hidden.empty()) {
    bad("network widths must be nonempty and positive");
  }
  for (int w : actor_trunk) {
    if (w < 1) bad("actor_trunk widths must be >= 1");
  }
  for (int w : critic_hidden) {
    if (w < 1) bad("critic_hidden widths must be >= 1");
  }
  if (!agent_config().valid()) bad("agent hyperparameters out of range");
  if (replay_capacity < batch_size) bad("replay_capacity < batch_size");
  if (explore_episodes < 0) bad("explore_episodes must be >= 0");
  if (noise_decay <= 0.0 || noise_decay > 1.0) bad("noise_decay in (0, 1]");
  if (noise_sd_sigma2 < 0.0 || noise_sd_amplitude < 0.0 || noise_sd_omega < 0.0) {
    bad("noise hyper deviations must be >= 0");
  }
  if (epochs < 1 || episodes_per_epoch < 1) bad("schedule must be >= 1");
  if (lr_decay <= 0.0 || lr_decay > 1.0) bad("lr_decay in (0, 1]");
  if (checkpoint_every < 1) bad("checkpoint_every must be >= 1");
  if (out_dir.empty()) bad("out_dir must be set");
}

namespace {

double parse_double(const std::string& v) {
  std::size_t pos = 0;
  double x = std::stod(v, &pos);
  if (pos != v.size()) throw std::runtime_error("trailing junk");
  return x;
}

int parse_int(const std::string& v) {
  std::size_t pos = 0;
  long x = std::stol(v, &pos);
  if (pos != v.size()) throw std::runtime_error("trailing junk");
  return static_cast<int>(x);
}

std::uint64_t parse_u64(const std::string& v) {
  std::size_t pos = 0;
  unsigned long long x = std::stoull(v, &pos);
  if (pos != v.size()) throw std::runtime_error("trailing junk");
  return x;
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::runtime_error("expected true/false");
}

std::vector<int> parse_int_list(const std::string& v) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(item));
  if (out.empty()) throw std::runtime_error("empty list");
  return out;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& key_table() {
  static const std::map<std::string, Setter> table = {
      {"dt", [](RunConfig& c, const std::string& v) { c.dt = parse_double(v); }},
      {"wheelbase", [](RunConfig& c, const std::string& v) { c.wheelbase = parse_double(v); }},
      {"delta_max_deg", [](RunConfig& c, const std::string& v) { c.delta_max_deg = parse_double(v); }},
      {"ddelta_max_deg", [](RunConfig& c, const std::string& v) { c.ddelta_max_deg = parse_double(v); }},
      {"a_max", [](RunConfig& c, const std::string& v) { c.a_max = parse_double(v); }},
      {"v_avg_min", [](RunConfig& c, const std::string& v) { c.v_avg_min = parse_double(v); }},
      {"v_avg_max", [](RunConfig& c, const std::string& v) { c.v_avg_max = parse_double(v); }},
      {"steer_sample_max_deg", [](RunConfig& c, const std::string& v) { c.steer_sample_max_deg = parse_double(v); }},
      {"accel_above_min", [](RunConfig& c, const std::string& v) { c.accel_above_min = parse_double(v); }},
      {"accel_above_max", [](RunConfig& c, const std::string& v) { c.accel_above_max = parse_double(v); }},
      {"accel_below_min", [](RunConfig& c, const std::string& v) { c.accel_below_min = parse_double(v); }},
      {"accel_below_max", [](RunConfig& c, const std::string& v) { c.accel_below_max = parse_double(v); }},
      {"target_length", [](RunConfig& c, const std::string& v) { c.target_length = parse_double(v); }},
      {"waypoint_spacing", [](RunConfig& c, const std::string& v) { c.waypoint_spacing = parse_double(v); }},
      {"lookahead", [](RunConfig& c, const std::string& v) { c.lookahead = parse_int(v); }},
      {"cte_terminate", [](RunConfig& c, const std::string& v) { c.cte_terminate = parse_double(v); }},
      {"max_episode_steps", [](RunConfig& c, const std::string& v) { c.max_episode_steps = parse_int(v); }},
      {"actor_trunk", [](RunConfig& c, const std::string& v) { c.actor_trunk = parse_int_list(v); }},
      {"actor_branch", [](RunConfig& c, const std::string& v) { c.actor_branch = parse_int(v); }},
      {"critic_hidden", [](RunConfig& c, const std::string& v) { c.critic_hidden = parse_int_list(v); }},
      {"gamma", [](RunConfig& c, const std::string& v) { c.gamma = parse_double(v); }},
      {"rho", [](RunConfig& c, const std::string& v) { c.rho = parse_double(v); }},
      {"batch_size", [](RunConfig& c, const std::string& v) { c.batch_size = parse_int(v); }},
      {"actor_lr", [](RunConfig& c, const std::string& v) { c.actor_lr = parse_double(v); }},
      {"critic_lr", [](RunConfig& c, const std::string& v) { c.critic_lr = parse_double(v); }},
      {"updates_per_step", [](RunConfig& c, const std::string& v) { c.updates_per_step = parse_int(v); }},
      {"grad_clip_norm", [](RunConfig& c, const std::string& v) { c.grad_clip_norm = parse_double(v); }},
      {"replay_capacity", [](RunConfig& c, const std::string& v) { c.replay_capacity = parse_int(v); }},
      {"explore_episodes", [](RunConfig& c, const std::string& v) { c.explore_episodes = parse_int(v); }},
      {"noise_decay", [](RunConfig& c, const std::string& v) { c.noise_decay = parse_double(v); }},
      {"noise_sd_sigma2", [](RunConfig& c, const std::string& v) { c.noise_sd_sigma2 = parse_double(v); }},
      {"noise_sd_amplitude", [](RunConfig& c, const std::string& v) { c.noise_sd_amplitude = parse_double(v); }},
      {"noise_sd_omega", [](RunConfig& c, const std::string& v) { c.noise_sd_omega = parse_double(v); }},
      {"epochs", [](RunConfig& c, const std::string& v) { c.epochs = parse_int(v); }},
      {"episodes_per_epoch", [](RunConfig& c, const std::string& v) { c.episodes_per_epoch = parse_int(v); }},
      {"lr_decay", [](RunConfig& c, const std::string& v) { c.lr_decay = parse_double(v); }},
      {"seed", [](RunConfig& c, const std::string& v) { c.seed = parse_u64(v); }},
      {"checkpoint_every", [](RunConfig& c, const std::string& v) { c.checkpoint_every = parse_int(v); }},
      {"persist_replay", [](RunConfig& c, const std::string& v) { c.persist_replay = parse_bool(v); }},
      {"out_dir", [](RunConfig& c, const std::string& v) { c.out_dir = v; }},
  };
  return table;
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected 'key = value'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    const auto it = key_table().find(key);
    if (it == key_table().end()) {
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": unknown key '" + key + "'");
    }
    try {
      it->second(cfg, value);
    } catch (const std::exception& e) {
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": bad value for '" + key + "': " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open config: " + file.string());
  return parse_config(in);
}

void write_config(const RunConfig& cfg, std::ostream& out) {
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  auto list = [](const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(v[i]);
    }
    return s;
  };
  out << "# simulation\n"
      << "dt = " << num(cfg.dt) << '\n'
      << "wheelbase = " << num(cfg.wheelbase) << '\n'
      << "delta_max_deg = " << num(cfg.delta_max_deg) << '\n'
      << "ddelta_max_deg = " << num(cfg.ddelta_max_deg) << '\n'
      << "a_max = " << num(cfg.a_max) << '\n'
      << "\n# path generation\n"
      << "v_avg_min = " << num(cfg.v_avg_min) << '\n'
      << "v_avg_max = " << num(cfg.v_avg_max) << '\n'
      << "steer_sample_max_deg = " << num(cfg.steer_sample_max_deg) << '\n'
      << "accel_above_min = " << num(cfg.accel_above_min) << '\n'
      << "accel_above_max = " << num(cfg.accel_above_max) << '\n'
      << "accel_below_min = " << num(cfg.accel_below_min) << '\n'
      << "accel_below_max = " << num(cfg.accel_below_max) << '\n'
      << "target_length = " << num(cfg.target_length) << '\n'
      << "waypoint_spacing = " << num(cfg.waypoint_spacing) << '\n'
      << "\n# environment\n"
      << "lookahead = " << cfg.lookahead << '\n'
      << "cte_terminate = " << num(cfg.cte_terminate) << '\n'
      << "max_episode_steps = " << cfg.max_episode_steps << '\n'
      << "\n# networks\n"
      << "actor_trunk = " << list(cfg.actor_trunk) << '\n'
      << "actor_branch = " << cfg.actor_branch << '\n'
      << "critic_hidden = " << list(cfg.critic_hidden) << '\n'
      << "\n# agent\n"
      << "gamma = " << num(cfg.gamma) << '\n'
      << "rho = " << num(cfg.rho) << '\n'
      << "batch_size = " << cfg.batch_size << '\n'
      << "actor_lr = " << num(cfg.actor_lr) << '\n'
      << "critic_lr = " << num(cfg.critic_lr) << '\n'
      << "updates_per_step = " << cfg.updates_per_step << '\n'
      << "grad_clip_norm = " << num(cfg.grad_clip_norm) << '\n'
      << "replay_capacity = " << cfg.replay_capacity << '\n'
      << "\n# exploration\n"
      << "explore_episodes = " << cfg.explore_episodes << '\n'
      << "noise_decay = " << num(cfg.noise_decay) << '\n'
      << "noise_sd_sigma2 = " << num(cfg.noise_sd_sigma2) << '\n'
      << "noise_sd_amplitude = " << num(cfg.noise_sd_amplitude) << '\n'
      << "noise_sd_omega = " << num(cfg.noise_sd_omega) << '\n'
      << "\n# run schedule and output\n"
      << "epochs = " << cfg.epochs << '\n'
      << "episodes_per_epoch = " << cfg.episodes_per_epoch << '\n'
      << "lr_decay = " << num(cfg.lr_decay) << '\n'
      << "seed = " << cfg.seed << '\n'
      << "checkpoint_every = " << cfg.checkpoint_every << '\n'
      << "persist_replay = " << (cfg.persist_replay ? "true" : "false") << '\n'
      << "out_dir = " << cfg.out_dir << '\n';
}

}  // namespace pathrl
