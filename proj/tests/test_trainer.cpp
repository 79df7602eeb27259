#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pathrl/checkpoint.hpp"
#include "pathrl/eval.hpp"
#include "pathrl/trainer.hpp"

using namespace pathrl;

namespace {

namespace fs = std::filesystem;

RunConfig tiny_config(const fs::path& out_dir) {
  RunConfig cfg;
  cfg.actor_trunk = {8, 8};
  cfg.actor_branch = 4;
  cfg.critic_hidden = {8, 8};
  cfg.batch_size = 8;
  cfg.replay_capacity = 4096;
  cfg.target_length = 40.0;
  cfg.max_episode_steps = 200;
  cfg.explore_episodes = 1;
  cfg.checkpoint_every = 1;
  cfg.persist_replay = true;
  cfg.seed = 7;
  cfg.out_dir = out_dir.string();
  return cfg;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("pathrl_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("train_episode gates updates on buffer warmup") {
  RunConfig cfg = tiny_config(fresh_dir("warmup"));
  cfg.batch_size = 100000;  // can never warm up in one tiny episode
  Environment env(cfg.env_config());
  DdpgAgent agent(cfg.agent_config(), cfg.seed);
  const nn::Mlp critic_before = agent.critic();
  ReplayBuffer buffer(static_cast<std::size_t>(cfg.replay_capacity));
  NoiseSchedule schedule = cfg.noise_schedule();

  const EpisodeStats stats =
      train_episode(env, agent, buffer, schedule, 0, cfg.seed);
  CHECK(stats.steps > 0);
  CHECK(stats.updates == 0);
  CHECK(buffer.size() == static_cast<std::size_t>(stats.steps));
  for (std::size_t i = 0; i < critic_before.layers.size(); ++i) {
    CHECK(agent.critic().layers[i].W == critic_before.layers[i].W);
  }
}

TEST_CASE("train_episode is deterministic and keeps parameters finite") {
  RunConfig cfg = tiny_config(fresh_dir("det_episode"));
  auto run_once = [&]() {
    Environment env(cfg.env_config());
    DdpgAgent agent(cfg.agent_config(), cfg.seed);
    ReplayBuffer buffer(static_cast<std::size_t>(cfg.replay_capacity));
    NoiseSchedule schedule = cfg.noise_schedule();
    EpisodeStats total;
    for (int e = 0; e < 5; ++e) {
      const EpisodeStats s =
          train_episode(env, agent, buffer, schedule, e, cfg.seed);
      end_episode(schedule);
      total.steps += s.steps;
      total.return_sum += s.return_sum;
      total.updates += s.updates;
      total.critic_loss_sum += s.critic_loss_sum;
      CHECK(agent.all_finite());
      CHECK(std::isfinite(s.critic_loss_sum));
    }
    return total;
  };
  const EpisodeStats a = run_once();
  const EpisodeStats b = run_once();
  CHECK(a.steps == b.steps);
  CHECK(a.return_sum == b.return_sum);
  CHECK(a.updates == b.updates);
  CHECK(a.critic_loss_sum == b.critic_loss_sum);
  CHECK(a.updates > 0);
}

TEST_CASE("run_training writes the promised artifacts") {
  const fs::path dir = fresh_dir("smoke");
  RunConfig cfg = tiny_config(dir);
  cfg.epochs = 1;
  cfg.episodes_per_epoch = 2;
  run_training(cfg, /*resume=*/false);

  const auto records = load_metrics_file(dir / "metrics.csv");
  REQUIRE(records.size() == 2);
  CHECK(records[0].episode == 0);
  CHECK(records[1].episode == 1);
  CHECK(records[0].steps > 0);
  CHECK(records[0].noise_multiplier == 1.0);
  CHECK(fs::exists(dir / "checkpoint_final.txt"));
  CHECK(fs::exists(dir / "checkpoint_latest.txt"));
  CHECK(fs::exists(dir / "checkpoint_epoch_1.txt"));
  CHECK(fs::exists(dir / "summary.csv"));
  CHECK(fs::exists(dir / "replay_latest.txt"));

  const Checkpoint final_ckpt = load_checkpoint_file(dir / "checkpoint_final.txt");
  CHECK(final_ckpt.episodes_done == 2);
  fs::remove_all(dir);
}

TEST_CASE("training is bit-reproducible") {
  const fs::path dir_a = fresh_dir("repro_a");
  const fs::path dir_b = fresh_dir("repro_b");
  RunConfig cfg_a = tiny_config(dir_a);
  cfg_a.epochs = 2;
  cfg_a.episodes_per_epoch = 3;
  RunConfig cfg_b = cfg_a;
  cfg_b.out_dir = dir_b.string();

  run_training(cfg_a, false);
  run_training(cfg_b, false);

  CHECK(slurp(dir_a / "metrics.csv") == slurp(dir_b / "metrics.csv"));
  CHECK(slurp(dir_a / "checkpoint_final.txt") ==
        slurp(dir_b / "checkpoint_final.txt"));
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
}

TEST_CASE("resume reproduces the uninterrupted run") {
  const fs::path dir_full = fresh_dir("resume_full");
  const fs::path dir_part = fresh_dir("resume_part");

  RunConfig cfg_full = tiny_config(dir_full);
  cfg_full.epochs = 2;
  cfg_full.episodes_per_epoch = 3;
  run_training(cfg_full, false);

  // Same schedule, but stop after the first epoch, then resume.
  RunConfig cfg_half = tiny_config(dir_part);
  cfg_half.epochs = 1;
  cfg_half.episodes_per_epoch = 3;
  run_training(cfg_half, false);
  RunConfig cfg_resume = tiny_config(dir_part);
  cfg_resume.epochs = 2;
  cfg_resume.episodes_per_epoch = 3;
  run_training(cfg_resume, /*resume=*/true);

  CHECK(slurp(dir_full / "metrics.csv") == slurp(dir_part / "metrics.csv"));
  CHECK(slurp(dir_full / "checkpoint_final.txt") ==
        slurp(dir_part / "checkpoint_final.txt"));
  fs::remove_all(dir_full);
  fs::remove_all(dir_part);
}

TEST_CASE("resume refuses mismatched network shapes") {
  const fs::path dir = fresh_dir("resume_mismatch");
  RunConfig cfg = tiny_config(dir);
  cfg.epochs = 1;
  cfg.episodes_per_epoch = 1;
  run_training(cfg, false);

  RunConfig wider = cfg;
  wider.actor_trunk = {16, 16};
  CHECK_THROWS_AS(run_training(wider, true), std::invalid_argument);
  fs::remove_all(dir);
}

TEST_CASE("evaluation is deterministic and read-only") {
  const fs::path dir = fresh_dir("eval");
  RunConfig cfg = tiny_config(dir);
  cfg.epochs = 1;
  cfg.episodes_per_epoch = 2;
  run_training(cfg, false);

  const std::string ckpt_bytes = slurp(dir / "checkpoint_final.txt");
  const Checkpoint ckpt = load_checkpoint_file(dir / "checkpoint_final.txt");
  DdpgAgent agent(cfg.agent_config(), cfg.seed);
  agent.actor() = ckpt.actor;
  agent.actor_target() = ckpt.actor_target;
  agent.critic() = ckpt.critic;
  agent.critic_target() = ckpt.critic_target;
  agent.actor_adam() = ckpt.actor_adam;
  agent.critic_adam() = ckpt.critic_adam;
  agent.set_learning_rates(ckpt.actor_lr, ckpt.critic_lr);

  const EvalReport r1 = evaluate_tracks(cfg, agent, 3, 99);
  const EvalReport r2 = evaluate_tracks(cfg, agent, 3, 99);
  REQUIRE(r1.tracks.size() == 3);
  std::stringstream t1, t2;
  write_eval_table(r1, t1);
  write_eval_table(r2, t2);
  CHECK(t1.str() == t2.str());

  // The agent parameters were not touched by evaluation.
  Checkpoint after;
  after.actor = agent.actor();
  after.actor_target = agent.actor_target();
  after.critic = agent.critic();
  after.critic_target = agent.critic_target();
  after.actor_adam = agent.actor_adam();
  after.critic_adam = agent.critic_adam();
  after.episodes_done = ckpt.episodes_done;
  after.actor_lr = ckpt.actor_lr;
  after.critic_lr = ckpt.critic_lr;
  std::stringstream resaved;
  save_checkpoint(after, resaved);
  CHECK(resaved.str() == ckpt_bytes);

  // A barely trained agent cannot finish the tracks (sanity direction).
  CHECK(r1.averages.pct_complete < 100.0);
  fs::remove_all(dir);
}
