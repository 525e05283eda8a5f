#pragma once

#include "whs/sim.hpp"

namespace whs {

/// Pipelined prediction: in view v there are min(v + 1, 4) in-flight blocks,
/// each one quorum stage further along (stage 1 = NewView for the fresh
/// proposal, stages 2-4 = Prepare/PreCommit/Commit for its predecessors).
/// Every stage draws its own independent latency vector; the view completes
/// when the slowest concurrent quorum does. A block proposed in view v
/// finishes stage 4 in view v+3 and is executed in view v+4.
ScenarioResult predict_chained_run(const LatencyMatrix& m,
                                   const WeightAssignment& weights,
                                   double threshold,
                                   const LeaderSchedule& schedule, int views,
                                   const std::set<int>& faulty, SeededRng& rng,
                                   const SimOptions& opts = {});

/// Number of concurrent pipeline stages in view v during warm-up and after.
int chained_stage_count(int view);

}  // namespace whs
