#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "whs/anneal.hpp"
#include "whs/chained.hpp"
#include "whs/latency_matrix.hpp"
#include "whs/sim.hpp"

namespace whs {

enum class Variant {
  Baseline,       // all weights 1, round-robin
  Weighted,       // tailored V_max/V_min assignment
  BestAssigned,   // annealed V_max placement
  OptimalLeader,  // annealed leader rotation
  Combined,       // both, coin-flipped per candidate
  Continuous,     // annealed real-valued weights
};

const char* to_string(Variant v);
Variant variant_from_string(const std::string& name);

struct AnnealOverrides {
  std::optional<double> initial_temperature;
  std::optional<double> cooling_rate;
  std::optional<double> min_temperature;
  std::optional<int> max_evaluations;
};

struct ScenarioSpec {
  std::string scenario_id = "scenario";
  Variant variant = Variant::Weighted;
  bool chained = false;
  int f = 1;
  int delta = 1;
  int views = 10;  // within [1, 10000]
  std::string topology_path;  // empty -> random topology
  int random_n = 0;
  double random_max_latency = 0.0;
  bool faulty = false;
  bool static_network = false;
  std::uint64_t seed = 1;
  AnnealOverrides anneal;
};

struct ScenarioOutcome {
  ScenarioResult result;
  WeightAssignment final_weights;
  LeaderSchedule final_schedule;
  double quorum_threshold = 0.0;
  bool annealed = false;
  std::string status = "ok";  // or "quorum_unreachable@view<k>"
  int failed_view = -1;
};

/// Discrete assignment tailored to the topology: replicas ranked by total
/// distance to all others (row sum, ties by index); the f best and f worst
/// connected get V_max.
WeightAssignment tailored_weighted_assignment(const ProtocolConfig& config,
                                              const LatencyMatrix& m);

/// Loads the spec's topology file or generates the random topology from the
/// spec's dedicated seed stream.
LatencyMatrix resolve_topology(const ScenarioSpec& spec);

/// Dispatches to the right weighting/annealing chain and prediction model.
/// Annealing (when the variant asks for it) runs on the non-faulty model
/// with frozen noise; faults are injected into the optimized configuration
/// for the final prediction. QuorumUnreachable is reported via status, not
/// thrown.
ScenarioOutcome run_scenario(const ScenarioSpec& spec, const LatencyMatrix& m);
ScenarioOutcome run_scenario(const ScenarioSpec& spec);

/// One CSV row of an experiment (see emit_results for the column order).
struct ResultRow {
  std::string scenario_id;
  std::string variant;
  bool chained = false;
  int f = 1;
  int delta = 0;
  int views = 0;
  bool faulty = false;
  std::uint64_t seed = 0;
  double total_latency_ms = 0.0;
  double avg_per_view_ms = 0.0;
  std::string status = "ok";
};

ResultRow to_result_row(const ScenarioSpec& spec, const ScenarioOutcome& out);

/// Runs the spec once per view count in [views_from, views_to].
std::vector<ResultRow> run_sweep(const ScenarioSpec& spec, int views_from,
                                 int views_to);

struct CampaignRow {
  int topology_index = 0;
  double best_assigned_ms = 0.0;
  double continuous_ms = 0.0;
  double difference_ms = 0.0;   // best_assigned - continuous
  std::string outcome;          // win | tie | loss (for continuous)
};

struct CampaignSummary {
  std::vector<CampaignRow> rows;
  int wins = 0;
  int ties = 0;
  int losses = 0;

  double better_or_equal_fraction() const;
};

/// Best-assigned vs continuous under the faulty scenario, one random
/// topology (entries U(0, max_latency)) per row. Tie means the total-latency
/// difference is within 1e-6 ms.
CampaignSummary run_comparison_campaign(const ScenarioSpec& base_spec,
                                        int topologies);

}  // namespace whs
