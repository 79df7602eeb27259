#include "pathrl/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "pathrl/checkpoint.hpp"
#include "pathrl/seeds.hpp"

namespace pathrl {

EpisodeStats train_episode(Environment& env, DdpgAgent& agent,
                           ReplayBuffer& buffer, const NoiseSchedule& schedule,
                           std::int64_t episode_index,
                           std::uint64_t run_seed) {
  auto noise_rng = make_rng(run_seed, SeedStream::kNoise,
                            static_cast<std::uint64_t>(episode_index));
  auto sample_rng = make_rng(run_seed, SeedStream::kSample,
                             static_cast<std::uint64_t>(episode_index));
  const SinusoidNoiseEpisodeParams params =
      begin_episode(schedule, noise_rng);

  Observation obs = env.reset(
      derive_seed(run_seed, SeedStream::kPath,
                  static_cast<std::uint64_t>(episode_index)));

  const bool exploring = episode_index < schedule.explore_episodes;
  const std::size_t batch =
      static_cast<std::size_t>(agent.config().batch_size);

  EpisodeStats stats;
  for (int t = 0;; ++t) {
    const Action actor_out = exploring ? Action{} : agent.act(obs);
    const Action action =
        select_action(actor_out, episode_index, schedule, params, t, noise_rng);
    const StepResult result = env.step(action);

    buffer.push({obs, action, result.reward, result.obs, result.terminal});
    obs = result.obs;

    stats.steps += 1;
    stats.return_sum += result.reward;
    stats.cte_sum += result.info.cte;
    stats.abs_dv_sum += std::abs(result.info.v_err);
    stats.completion_pct = 100.0 * result.info.progress;
    stats.travelled_m = result.info.progress * env.path().total_length;
    stats.terminal = result.terminal;

    if (buffer.size() >= batch) {
      for (int u = 0; u < agent.config().updates_per_step; ++u) {
        const UpdateStats us = agent.update_once(buffer, sample_rng);
        stats.critic_loss_sum += us.critic_loss;
        stats.actor_objective_sum += us.actor_objective;
        stats.updates += 1;
      }
    }
    if (result.episode_over) break;
  }
  return stats;
}

MetricsRecord to_metrics_record(const EpisodeStats& stats,
                                std::int64_t episode,
                                double noise_multiplier) {
  MetricsRecord rec;
  rec.episode = episode;
  rec.steps = stats.steps;
  rec.return_per_step =
      stats.steps > 0 ? stats.return_sum / stats.steps : 0.0;
  rec.cte_sum = stats.cte_sum;
  rec.abs_dv_sum = stats.abs_dv_sum;
  rec.travelled_m = stats.travelled_m;
  rec.completion_pct = stats.completion_pct;
  rec.noise_multiplier = noise_multiplier;
  rec.critic_loss =
      stats.updates > 0 ? stats.critic_loss_sum / stats.updates : 0.0;
  rec.actor_objective =
      stats.updates > 0 ? stats.actor_objective_sum / stats.updates : 0.0;
  return rec;
}

namespace {

Checkpoint make_checkpoint(const DdpgAgent& agent, std::int64_t episodes_done) {
  Checkpoint ckpt;
  ckpt.actor = agent.actor();
  ckpt.actor_target = agent.actor_target();
  ckpt.critic = agent.critic();
  ckpt.critic_target = agent.critic_target();
  ckpt.actor_adam = agent.actor_adam();
  ckpt.critic_adam = agent.critic_adam();
  ckpt.episodes_done = episodes_done;
  ckpt.actor_lr = agent.actor_lr();
  ckpt.critic_lr = agent.critic_lr();
  return ckpt;
}

void restore_agent(DdpgAgent& agent, const Checkpoint& ckpt) {
  if (!agent.actor().same_shape(ckpt.actor) ||
      !agent.critic().same_shape(ckpt.critic)) {
    throw std::invalid_argument(
        "resume: checkpoint network shapes do not match the config");
  }
  agent.actor() = ckpt.actor;
  agent.actor_target() = ckpt.actor_target;
  agent.critic() = ckpt.critic;
  agent.critic_target() = ckpt.critic_target;
  agent.actor_adam() = ckpt.actor_adam;
  agent.critic_adam() = ckpt.critic_adam;
  agent.set_learning_rates(ckpt.actor_lr, ckpt.critic_lr);
}

// Rewrites the metrics file keeping only episodes < start, so a resumed run
// appends exactly the records the uninterrupted run would have produced.
void rewind_metrics(const std::filesystem::path& file, std::int64_t start) {
  std::vector<MetricsRecord> keep;
  if (std::filesystem::exists(file)) {
    for (const MetricsRecord& r : load_metrics_file(file)) {
      if (r.episode < start) keep.push_back(r);
    }
  }
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot rewrite metrics file");
  write_metrics_header(out);
  for (const MetricsRecord& r : keep) write_metrics_record(out, r);
}

void write_summary(const std::filesystem::path& metrics_file,
                   const std::filesystem::path& summary_file,
                   int episodes_per_epoch) {
  const auto records = load_metrics_file(metrics_file);
  std::ofstream out(summary_file);
  if (!out) throw std::runtime_error("cannot write summary file");
  out << "epoch,episodes,avg_return_per_step,avg_cte_per_step,avg_cte_per_m,"
         "avg_dv_per_step,avg_completion_pct\n";
  char buf[240];
  for (std::size_t begin = 0; begin < records.size();
       begin += static_cast<std::size_t>(episodes_per_epoch)) {
    const std::size_t end = std::min(
        records.size(), begin + static_cast<std::size_t>(episodes_per_epoch));
    double ret = 0, cte = 0, dv = 0, steps = 0, travelled = 0, completion = 0;
    for (std::size_t i = begin; i < end; ++i) {
      ret += records[i].return_per_step * records[i].steps;
      cte += records[i].cte_sum;
      dv += records[i].abs_dv_sum;
      steps += records[i].steps;
      travelled += records[i].travelled_m;
      completion += records[i].completion_pct;
    }
    const double n = static_cast<double>(end - begin);
    std::snprintf(buf, sizeof(buf), "%zu,%zu,%.9g,%.9g,%.9g,%.9g,%.9g\n",
                  begin / episodes_per_epoch + 1, end - begin,
                  steps > 0 ? ret / steps : 0.0,
                  steps > 0 ? cte / steps : 0.0,
                  travelled > 0 ? cte / travelled : 0.0,
                  steps > 0 ? dv / steps : 0.0, completion / n);
    out << buf;
  }
}

}  // namespace

void run_training(const RunConfig& cfg, bool resume) {
  cfg.validate();
  const std::filesystem::path out_dir(cfg.out_dir);
  std::filesystem::create_directories(out_dir);
  const auto metrics_file = out_dir / "metrics.csv";
  const auto latest_file = out_dir / "checkpoint_latest.txt";
  const auto replay_file = out_dir / "replay_latest.txt";

  Environment env(cfg.env_config());
  DdpgAgent agent(cfg.agent_config(), cfg.seed);
  NoiseSchedule schedule = cfg.noise_schedule();

  std::int64_t start_episode = 0;
  ReplayBuffer buffer(static_cast<std::size_t>(cfg.replay_capacity));
  if (resume) {
    if (!std::filesystem::exists(latest_file)) {
      throw std::invalid_argument("resume: no checkpoint at " +
                                  latest_file.string());
    }
    const Checkpoint ckpt = load_checkpoint_file(latest_file);
    restore_agent(agent, ckpt);
    start_episode = ckpt.episodes_done;
    if (cfg.persist_replay && std::filesystem::exists(replay_file)) {
      buffer = ReplayBuffer::load_file(replay_file);
      if (buffer.capacity() != static_cast<std::size_t>(cfg.replay_capacity)) {
        throw std::invalid_argument("resume: replay capacity mismatch");
      }
    }
  }
  schedule.episodes_done = start_episode;

  {
    std::ofstream cfg_out(out_dir / "config_used.cfg");
    if (cfg_out) write_config(cfg, cfg_out);
  }

  rewind_metrics(metrics_file, start_episode);
  std::ofstream metrics_out(metrics_file, std::ios::app);
  if (!metrics_out) throw std::runtime_error("cannot open metrics file");

  const std::int64_t total = cfg.total_episodes();
  auto save_state = [&](const std::filesystem::path& file,
                        std::int64_t episodes_done) {
    save_checkpoint_file(make_checkpoint(agent, episodes_done), file);
    if (cfg.persist_replay) buffer.save_file(replay_file);
  };

  for (std::int64_t e = start_episode; e < total; ++e) {
    // Closed-form learning-rate schedule (one decay per finished epoch) so
    // a resumed run sees exactly the rates the uninterrupted run would.
    const double lr_scale = std::pow(
        cfg.lr_decay, static_cast<double>(e / cfg.episodes_per_epoch));
    agent.set_learning_rates(cfg.actor_lr * lr_scale,
                             cfg.critic_lr * lr_scale);

    const double multiplier = schedule.multiplier();
    const EpisodeStats stats =
        train_episode(env, agent, buffer, schedule, e, cfg.seed);
    write_metrics_record(metrics_out,
                         to_metrics_record(stats, e, multiplier));
    metrics_out.flush();
    end_episode(schedule);

    const std::int64_t done = e + 1;
    const bool epoch_end = done % cfg.episodes_per_epoch == 0;
    if (epoch_end) {
      const auto epoch = done / cfg.episodes_per_epoch;
      save_state(out_dir / ("checkpoint_epoch_" + std::to_string(epoch) +
                            ".txt"),
                 done);
      save_state(latest_file, done);
      std::cout << "epoch " << epoch << "/" << cfg.epochs << " done ("
                << done << " episodes)\n";
    } else if (done % cfg.checkpoint_every == 0) {
      save_state(latest_file, done);
    }
  }

  save_state(out_dir / "checkpoint_final.txt", total);
  save_state(latest_file, total);
  write_summary(metrics_file, out_dir / "summary.csv",
                cfg.episodes_per_epoch);
}

}  // namespace pathrl
