#include "pathrl/eval.hpp"

#include <cstdio>
#include <ostream>

#include "pathrl/seeds.hpp"

namespace pathrl {

EvalReport evaluate_tracks(const RunConfig& cfg, const DdpgAgent& agent,
                           int n_tracks, std::uint64_t seed) {
  if (n_tracks < 1) throw std::invalid_argument("evaluate_tracks: n_tracks");
  EvalReport report;
  Environment env(cfg.env_config());

  for (int track = 0; track < n_tracks; ++track) {
    Observation obs = env.reset(derive_seed(
        seed, SeedStream::kEvalPath, static_cast<std::uint64_t>(track)));
    TrackEval te;
    te.track = track + 1;
    while (true) {
      const StepResult result = env.step(agent.act(obs));
      te.trace.push_back(result.info);
      te.return_sum += result.reward;
      te.steps += 1;
      obs = result.obs;
      if (result.episode_over) break;
    }
    te.metrics = episode_metrics(te.trace);
    report.tracks.push_back(std::move(te));
  }

  for (const TrackEval& te : report.tracks) {
    report.averages.avg_cte += te.metrics.avg_cte;
    report.averages.max_cte += te.metrics.max_cte;
    report.averages.avg_dv += te.metrics.avg_dv;
    report.averages.max_dv += te.metrics.max_dv;
    report.averages.pct_complete += te.metrics.pct_complete;
  }
  const double n = static_cast<double>(report.tracks.size());
  report.averages.avg_cte /= n;
  report.averages.max_cte /= n;
  report.averages.avg_dv /= n;
  report.averages.max_dv /= n;
  report.averages.pct_complete /= n;
  return report;
}

namespace {

void format_row(char* buf, std::size_t size, const char* label,
                const EpisodeMetrics& m, bool csv) {
  std::snprintf(buf, size,
                csv ? "%s,%.3f,%.3f,%.3f,%.3f,%.1f\n"
                    : "%5s %9.3f %9.3f %9.3f %9.3f %10.1f\n",
                label, m.avg_cte, m.max_cte, m.avg_dv, m.max_dv,
                m.pct_complete);
}

}  // namespace

void write_eval_table(const EvalReport& report, std::ostream& out) {
  out << "track,avg_cte,max_cte,avg_dv,max_dv,pct_complete\n";
  char buf[160];
  char label[24];
  for (const TrackEval& te : report.tracks) {
    std::snprintf(label, sizeof(label), "%d", te.track);
    format_row(buf, sizeof(buf), label, te.metrics, true);
    out << buf;
  }
  format_row(buf, sizeof(buf), "avg", report.averages, true);
  out << buf;
}

void print_eval_table(const EvalReport& report, std::ostream& out) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%5s %9s %9s %9s %9s %10s\n", "track",
                "avg_cte", "max_cte", "avg_dv", "max_dv", "pct_path");
  out << buf;
  char label[24];
  for (const TrackEval& te : report.tracks) {
    std::snprintf(label, sizeof(label), "%d", te.track);
    format_row(buf, sizeof(buf), label, te.metrics, false);
    out << buf;
  }
  format_row(buf, sizeof(buf), "avg", report.averages, false);
  out << buf;
}

void write_trace(const std::vector<StepInfo>& trace, std::ostream& out) {
  out << "t,x,y,v,delta,cte,v_ref,reward\n";
  char buf[240];
  for (std::size_t t = 0; t < trace.size(); ++t) {
    const StepInfo& i = trace[t];
    std::snprintf(buf, sizeof(buf),
                  "%zu,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n", t, i.state.x,
                  i.state.y, i.state.v, i.state.delta, i.cte, i.v_ref,
                  i.reward);
    out << buf;
  }
}

}  // namespace pathrl
