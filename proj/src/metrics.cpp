#include "pathrl/metrics.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pathrl {

void write_metrics_header(std::ostream& out) {
  out << "episode,steps,return_per_step,cte_sum,abs_dv_sum,travelled_m,"
         "completion_pct,noise_multiplier,critic_loss,actor_objective\n";
}

void write_metrics_record(std::ostream& out, const MetricsRecord& r) {
  char buf[360];
  std::snprintf(buf, sizeof(buf),
                "%lld,%d,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n",
                static_cast<long long>(r.episode), r.steps, r.return_per_step,
                r.cte_sum, r.abs_dv_sum, r.travelled_m, r.completion_pct,
                r.noise_multiplier, r.critic_loss, r.actor_objective);
  out << buf;
}

std::vector<MetricsRecord> load_metrics_file(
    const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open metrics: " + file.string());
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("metrics file empty: " + file.string());
  }
  std::vector<MetricsRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    MetricsRecord r;
    long long ep;
    if (std::sscanf(line.c_str(), "%lld,%d,%lg,%lg,%lg,%lg,%lg,%lg,%lg,%lg",
                    &ep, &r.steps, &r.return_per_step, &r.cte_sum,
                    &r.abs_dv_sum, &r.travelled_m, &r.completion_pct,
                    &r.noise_multiplier, &r.critic_loss,
                    &r.actor_objective) != 10) {
      throw std::runtime_error("bad metrics row: " + line);
    }
    r.episode = ep;
    out.push_back(r);
  }
  return out;
}

}  // namespace pathrl
