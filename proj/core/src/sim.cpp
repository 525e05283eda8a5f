#include "whs/sim.hpp"

#include "whs/errors.hpp"

namespace whs {

LeaderSchedule LeaderSchedule::round_robin(int n, int views) {
  if (n < 1 || views < 0) throw InvalidParameter("round_robin needs n >= 1");
  LeaderSchedule s;
  s.leaders.resize(views);
  for (int v = 0; v < views; ++v) s.leaders[v] = v % n;
  return s;
}

ViewTrace predict_view(const LatencyMatrix& m, int leader,
                       const WeightAssignment& weights, double threshold,
                       const std::set<int>& faulty, SeededRng& rng,
                       const SimOptions& opts) {
  if (weights.n() != m.n()) {
    throw InvalidParameter("weight vector length does not match topology");
  }
  ViewTrace t;
  t.leader = leader;
  auto quorum_time = [&](MessageKind kind) {
    auto latencies =
        sample_vote_latencies(m, leader, kind, faulty, rng, opts.static_network);
    return time_to_form_quorum(latencies, weights, threshold);
  };
  t.t_prepare = quorum_time(MessageKind::NewView);
  t.t_precommit = quorum_time(MessageKind::Prepare);
  t.t_commit = quorum_time(MessageKind::PreCommit);
  t.t_decide = quorum_time(MessageKind::Commit);
  return t;
}

ScenarioResult predict_run(const LatencyMatrix& m,
                           const WeightAssignment& weights, double threshold,
                           const LeaderSchedule& schedule, int views,
                           const std::set<int>& faulty, SeededRng& rng,
                           const SimOptions& opts) {
  if (views < 0 || schedule.size() < views) {
    throw InvalidParameter("schedule shorter than the requested view count");
  }
  ScenarioResult r;
  r.seed = rng.seed();
  r.faulty = faulty;
  for (int v = 0; v < views; ++v) {
    try {
      ViewTrace t = predict_view(m, schedule.leaders[v], weights, threshold,
                                 faulty, rng, opts);
      t.view = v;
      r.total_latency_ms += t.total();
      r.traces.push_back(std::move(t));
    } catch (const QuorumUnreachable& e) {
      throw QuorumUnreachable(e.what(), v);
    }
  }
  r.average_per_view_ms = views > 0 ? r.total_latency_ms / views : 0.0;
  return r;
}

}  // namespace whs
