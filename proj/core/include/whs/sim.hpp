#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "whs/latency_matrix.hpp"
#include "whs/net_model.hpp"
#include "whs/quorum.hpp"
#include "whs/rng.hpp"

namespace whs {

/// One leader replica index per view.
struct LeaderSchedule {
  std::vector<int> leaders;

  static LeaderSchedule round_robin(int n, int views);

  int size() const { return static_cast<int>(leaders.size()); }
};

/// The four sequential quorum-formation times of one basic view.
struct ViewTrace {
  int view = 0;
  int leader = 0;
  double t_prepare = 0.0;
  double t_precommit = 0.0;
  double t_commit = 0.0;
  double t_decide = 0.0;

  double total() const { return t_prepare + t_precommit + t_commit + t_decide; }
};

/// One chained view: quorum times of the concurrent pipeline stages, newest
/// block first. The view advances when the slowest stage completes.
struct ChainedViewTrace {
  int view = 0;
  int leader = 0;
  std::vector<double> stage_times;

  double view_latency() const;
};

struct SimOptions {
  /// Disables payload offsets entirely (offset = 0).
  bool static_network = false;
};

struct ScenarioResult {
  double total_latency_ms = 0.0;
  double average_per_view_ms = 0.0;
  std::set<int> faulty;
  std::uint64_t seed = 0;
  std::vector<ViewTrace> traces;                // basic runs
  std::vector<ChainedViewTrace> chained_traces; // chained runs
};

/// One basic view: four latency vectors (NewView, Prepare, PreCommit,
/// Commit), faulty senders at +inf, four sequential quorum times.
ViewTrace predict_view(const LatencyMatrix& m, int leader,
                       const WeightAssignment& weights, double threshold,
                       const std::set<int>& faulty, SeededRng& rng,
                       const SimOptions& opts = {});

/// Sums predict_view over views 0..views-1. Deterministic per rng seed.
/// QuorumUnreachable carries the offending view index.
ScenarioResult predict_run(const LatencyMatrix& m,
                           const WeightAssignment& weights, double threshold,
                           const LeaderSchedule& schedule, int views,
                           const std::set<int>& faulty, SeededRng& rng,
                           const SimOptions& opts = {});

}  // namespace whs
