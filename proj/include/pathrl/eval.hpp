#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "pathrl/agent.hpp"
#include "pathrl/config.hpp"
#include "pathrl/env.hpp"

namespace pathrl {

struct TrackEval {
  int track = 0;              // 1-based, as printed
  EpisodeMetrics metrics;
  std::vector<StepInfo> trace;
  int steps = 0;
  double return_sum = 0.0;
};

struct EvalReport {
  std::vector<TrackEval> tracks;
  EpisodeMetrics averages;  // column means over the tracks
};

// Runs the deterministic policy (no exploration noise) on n_tracks freshly
// generated paths. Track seeds live in their own stream, disjoint from the
// training episodes'. Does not modify the agent.
EvalReport evaluate_tracks(const RunConfig& cfg, const DdpgAgent& agent,
                           int n_tracks, std::uint64_t seed);

// CSV table, one row per track plus an averages row.
void write_eval_table(const EvalReport& report, std::ostream& out);
// Aligned human-readable rendering of the same table.
void print_eval_table(const EvalReport& report, std::ostream& out);

// Per-step trace: t, x, y, v, delta, cte, v_ref, reward.
void write_trace(const std::vector<StepInfo>& trace, std::ostream& out);

}  // namespace pathrl
