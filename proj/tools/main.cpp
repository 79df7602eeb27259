// Command-line front end: train, eval, gen-paths.

#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "pathrl/checkpoint.hpp"
#include "pathrl/config.hpp"
#include "pathrl/eval.hpp"
#include "pathrl/path.hpp"
#include "pathrl/seeds.hpp"
#include "pathrl/trainer.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct CommonOpts {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
};

// Loads the config (defaults when no file given) and applies flag overrides.
pathrl::RunConfig resolve_config(const CommonOpts& opts) {
  pathrl::RunConfig cfg;
  if (!opts.config_path.empty()) {
    cfg = pathrl::load_config_file(opts.config_path);
  }
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.out_dir) cfg.out_dir = *opts.out_dir;
  cfg.validate();
  return cfg;
}

void add_common_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "Run configuration file");
  cmd->add_option("--seed", opts.seed, "Override the config seed");
  cmd->add_option("--out", opts.out_dir, "Override the output directory");
}

int cmd_train(const CommonOpts& opts, bool resume) {
  pathrl::RunConfig cfg;
  try {
    cfg = resolve_config(opts);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    pathrl::run_training(cfg, resume);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "training failed: " << e.what() << '\n';
    return kExitRuntime;
  }
  std::cout << "training complete; outputs in " << cfg.out_dir << '\n';
  return kExitOk;
}

int cmd_eval(const CommonOpts& opts, const std::string& checkpoint_path,
             int tracks) {
  pathrl::RunConfig cfg;
  try {
    cfg = resolve_config(opts);
    if (tracks < 1) throw std::invalid_argument("--tracks must be >= 1");
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    const pathrl::Checkpoint ckpt =
        pathrl::load_checkpoint_file(checkpoint_path);
    pathrl::DdpgAgent agent(cfg.agent_config(), cfg.seed);
    if (!agent.actor().same_shape(ckpt.actor) ||
        !agent.critic().same_shape(ckpt.critic)) {
      std::cerr << "error: checkpoint shapes do not match the config\n";
      return kExitUsage;
    }
    agent.actor() = ckpt.actor;
    agent.actor_target() = ckpt.actor_target;
    agent.critic() = ckpt.critic;
    agent.critic_target() = ckpt.critic_target;

    const pathrl::EvalReport report =
        pathrl::evaluate_tracks(cfg, agent, tracks, cfg.seed);

    const std::filesystem::path out_dir(cfg.out_dir);
    std::filesystem::create_directories(out_dir);
    {
      std::ofstream table(out_dir / "eval_table.csv");
      pathrl::write_eval_table(report, table);
    }
    for (const pathrl::TrackEval& te : report.tracks) {
      std::ofstream trace(out_dir /
                          ("trace_track" + std::to_string(te.track) + ".csv"));
      pathrl::write_trace(te.trace, trace);
    }
    pathrl::print_eval_table(report, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "evaluation failed: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_gen_paths(const CommonOpts& opts, int count) {
  pathrl::RunConfig cfg;
  try {
    cfg = resolve_config(opts);
    if (count < 1) throw std::invalid_argument("--count must be >= 1");
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    const std::filesystem::path out_dir(cfg.out_dir);
    std::filesystem::create_directories(out_dir);
    for (int i = 0; i < count; ++i) {
      const auto path = pathrl::generate_path(
          cfg.pathgen_config(), cfg.vehicle_limits(),
          pathrl::derive_seed(cfg.seed, pathrl::SeedStream::kPath,
                              static_cast<std::uint64_t>(i)));
      pathrl::save_path_file(
          path, out_dir / ("path_" + std::to_string(i) + ".txt"));
    }
    std::cout << "wrote " << count << " paths to " << cfg.out_dir << '\n';
  } catch (const std::exception& e) {
    std::cerr << "path generation failed: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DDPG path-following trainer and evaluator"};
  app.require_subcommand(1);

  CommonOpts train_opts;
  bool resume = false;
  CLI::App* train = app.add_subcommand("train", "Train an agent");
  add_common_flags(train, train_opts);
  train->add_flag("--resume", resume,
                  "Continue from checkpoint_latest.txt in the output dir");

  CommonOpts eval_opts;
  std::string checkpoint_path;
  int tracks = 10;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate a checkpoint");
  add_common_flags(eval, eval_opts);
  eval->add_option("--checkpoint", checkpoint_path, "Checkpoint file")
      ->required();
  eval->add_option("--tracks", tracks, "Number of evaluation tracks");

  CommonOpts gen_opts;
  int count = 10;
  CLI::App* gen = app.add_subcommand("gen-paths", "Generate reference paths");
  add_common_flags(gen, gen_opts);
  gen->add_option("--count", count, "Number of paths to write");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (train->parsed()) return cmd_train(train_opts, resume);
  if (eval->parsed()) return cmd_eval(eval_opts, checkpoint_path, tracks);
  if (gen->parsed()) return cmd_gen_paths(gen_opts, count);
  return kExitUsage;
}
