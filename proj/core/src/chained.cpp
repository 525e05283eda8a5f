#include "whs/chained.hpp"

#include <algorithm>

#include "whs/errors.hpp"

namespace whs {

double ChainedViewTrace::view_latency() const {
  double max = 0.0;
  for (double t : stage_times) max = std::max(max, t);
  return max;
}

int chained_stage_count(int view) { return std::min(view + 1, 4); }

ScenarioResult predict_chained_run(const LatencyMatrix& m,
                                   const WeightAssignment& weights,
                                   double threshold,
                                   const LeaderSchedule& schedule, int views,
                                   const std::set<int>& faulty, SeededRng& rng,
                                   const SimOptions& opts) {
  if (views < 0 || schedule.size() < views) {
    throw InvalidParameter("schedule shorter than the requested view count");
  }
  if (weights.n() != m.n()) {
    throw InvalidParameter("weight vector length does not match topology");
  }
  static constexpr MessageKind kStageKinds[4] = {
      MessageKind::NewView, MessageKind::Prepare, MessageKind::PreCommit,
      MessageKind::Commit};

  ScenarioResult r;
  r.seed = rng.seed();
  r.faulty = faulty;
  for (int v = 0; v < views; ++v) {
    ChainedViewTrace t;
    t.view = v;
    t.leader = schedule.leaders[v];
    const int stages = chained_stage_count(v);
    // Newest block first; each concurrent stage gets its own vote messages
    // and therefore its own independent latency vector.
    for (int s = 0; s < stages; ++s) {
      auto latencies = sample_vote_latencies(m, t.leader, kStageKinds[s],
                                             faulty, rng, opts.static_network);
      try {
        t.stage_times.push_back(
            time_to_form_quorum(latencies, weights, threshold));
      } catch (const QuorumUnreachable& e) {
        throw QuorumUnreachable(e.what(), v);
      }
    }
    r.total_latency_ms += t.view_latency();
    r.chained_traces.push_back(std::move(t));
  }
  r.average_per_view_ms = views > 0 ? r.total_latency_ms / views : 0.0;
  return r;
}

}  // namespace whs
