#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace pathrl {

// One row of the per-episode metrics stream (CSV with a header). Sums are
// exported rather than means so both per-step and per-meter normalizations
// can be derived downstream.
struct MetricsRecord {
  std::int64_t episode = 0;
  int steps = 0;
  double return_per_step = 0.0;
  double cte_sum = 0.0;
  double abs_dv_sum = 0.0;
  double travelled_m = 0.0;
  double completion_pct = 0.0;
  double noise_multiplier = 0.0;
  double critic_loss = 0.0;      // mean over the episode's updates
  double actor_objective = 0.0;  // mean over the episode's updates
};

void write_metrics_header(std::ostream& out);
void write_metrics_record(std::ostream& out, const MetricsRecord& rec);
std::vector<MetricsRecord> load_metrics_file(const std::filesystem::path& file);

}  // namespace pathrl
