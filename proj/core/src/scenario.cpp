#include "whs/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "whs/errors.hpp"

namespace whs {

namespace {

// Seed streams derived from the experiment seed.
constexpr std::uint64_t kPredictionStream = 0;
constexpr std::uint64_t kAnnealStream = 1;
constexpr std::uint64_t kTopologyStream = 2;
constexpr std::uint64_t kCampaignStreamBase = 100;

constexpr int kMaxViews = 10000;
constexpr double kCampaignTieTolMs = 1e-6;

}  // namespace

const char* to_string(Variant v) {
  switch (v) {
    case Variant::Baseline: return "basic-baseline";
    case Variant::Weighted: return "weighted";
    case Variant::BestAssigned: return "best-assigned";
    case Variant::OptimalLeader: return "optimal-leader";
    case Variant::Combined: return "combined";
    case Variant::Continuous: return "continuous";
  }
  return "?";
}

Variant variant_from_string(const std::string& name) {
  if (name == "basic-baseline" || name == "baseline") return Variant::Baseline;
  if (name == "weighted") return Variant::Weighted;
  if (name == "best-assigned") return Variant::BestAssigned;
  if (name == "optimal-leader") return Variant::OptimalLeader;
  if (name == "combined") return Variant::Combined;
  if (name == "continuous") return Variant::Continuous;
  throw InvalidParameter("unknown variant: " + name);
}

WeightAssignment tailored_weighted_assignment(const ProtocolConfig& config,
                                              const LatencyMatrix& m) {
  std::vector<int> order(m.n());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (m.row_sum(a) != m.row_sum(b)) return m.row_sum(a) < m.row_sum(b);
    return a < b;
  });
  std::set<int> vmax_positions;
  for (int i = 0; i < config.f; ++i) {
    vmax_positions.insert(order[i]);                  // best connected
    vmax_positions.insert(order[order.size() - 1 - i]);  // worst connected
  }
  return make_discrete_assignment(config, vmax_positions);
}

LatencyMatrix resolve_topology(const ScenarioSpec& spec) {
  if (!spec.topology_path.empty()) {
    return load_latency_matrix_file(spec.topology_path);
  }
  if (spec.random_n > 0) {
    SeededRng rng(derive_seed(spec.seed, kTopologyStream));
    return generate_random_topology(spec.random_n, spec.random_max_latency,
                                    rng);
  }
  throw InvalidParameter("scenario needs a topology file or a random spec");
}

namespace {

void validate_spec(const ScenarioSpec& spec) {
  if (spec.views < 1 || spec.views > kMaxViews) {
    throw InvalidParameter("views must be within [1, 10000]");
  }
  if (spec.variant == Variant::Continuous && spec.chained) {
    throw InvalidParameter(
        "the continuous weighting scheme is not supported on the chained "
        "pipeline");
  }
}

AnnealParams resolve_anneal_params(const ScenarioSpec& spec,
                                   double initial_energy) {
  AnnealParams p =
      default_anneal_params(initial_energy, derive_seed(spec.seed, kAnnealStream));
  if (spec.anneal.initial_temperature) {
    p.initial_temperature = *spec.anneal.initial_temperature;
    p.min_temperature = 1e-3 * p.initial_temperature;
  }
  if (spec.anneal.cooling_rate) p.cooling_rate = *spec.anneal.cooling_rate;
  if (spec.anneal.min_temperature) p.min_temperature = *spec.anneal.min_temperature;
  if (spec.anneal.max_evaluations) p.max_evaluations = *spec.anneal.max_evaluations;
  return p;
}

}  // namespace

ScenarioOutcome run_scenario(const ScenarioSpec& spec, const LatencyMatrix& m) {
  validate_spec(spec);
  const ProtocolConfig config = make_config(spec.f, spec.delta);
  if (m.n() != config.n) {
    throw InvalidParameter("topology has " + std::to_string(m.n()) +
                           " replicas, expected n = 3f + 1 + delta = " +
                           std::to_string(config.n));
  }

  const SimOptions opts{spec.static_network};
  auto threshold_of = [&](const WeightAssignment& w) {
    return w.scheme == WeightScheme::Continuous
               ? continuous_quorum_threshold(w, config.f)
               : config.q_v;
  };
  // Frozen noise: every energy evaluation and the final prediction replay
  // the same per-seed draw sequence, so candidates are compared on one
  // deterministic landscape.
  auto predict = [&](const WeightAssignment& w, const LeaderSchedule& schedule,
                     const std::set<int>& faulty) {
    SeededRng rng(derive_seed(spec.seed, kPredictionStream));
    return spec.chained
               ? predict_chained_run(m, w, threshold_of(w), schedule,
                                     spec.views, faulty, rng, opts)
               : predict_run(m, w, threshold_of(w), schedule, spec.views,
                             faulty, rng, opts);
  };

  WeightAssignment initial_weights =
      spec.variant == Variant::Baseline
          ? make_equal_baseline(config.n)
          : tailored_weighted_assignment(config, m);
  if (spec.variant == Variant::Continuous) {
    initial_weights.scheme = WeightScheme::Continuous;
  }

  CandidateState best{initial_weights,
                      LeaderSchedule::round_robin(config.n, spec.views), 0.0};

  ScenarioOutcome out;
  if (spec.variant == Variant::BestAssigned ||
      spec.variant == Variant::OptimalLeader ||
      spec.variant == Variant::Combined ||
      spec.variant == Variant::Continuous) {
    EnergyFn energy = [&](const CandidateState& c) {
      return predict(c.weights, c.schedule, {}).total_latency_ms;
    };
    PerturbFn perturb;
    switch (spec.variant) {
      case Variant::BestAssigned:
        perturb = perturb_discrete_weights;
        break;
      case Variant::OptimalLeader:
        perturb = perturb_leader_schedule;
        break;
      case Variant::Combined:
        perturb = perturb_combined;
        break;
      default:
        perturb = [f = config.f](const CandidateState& s, SeededRng& rng) {
          return perturb_continuous(s, rng, f);
        };
        break;
    }
    const double initial_energy = energy(best);
    best = anneal(best, energy, perturb, resolve_anneal_params(spec, initial_energy));
    out.annealed = true;
  }

  out.final_weights = best.weights;
  out.final_schedule = best.schedule;
  out.quorum_threshold = threshold_of(best.weights);

  std::set<int> faulty;
  if (spec.faulty) faulty = select_faulty(best.weights, config.f);
  try {
    out.result = predict(best.weights, best.schedule, faulty);
    out.status = "ok";
  } catch (const QuorumUnreachable& e) {
    out.status = "quorum_unreachable@view" + std::to_string(e.view());
    out.failed_view = e.view();
    out.result = ScenarioResult{};
    out.result.seed = spec.seed;
    out.result.faulty = faulty;
  }
  return out;
}

ScenarioOutcome run_scenario(const ScenarioSpec& spec) {
  return run_scenario(spec, resolve_topology(spec));
}

ResultRow to_result_row(const ScenarioSpec& spec, const ScenarioOutcome& out) {
  ResultRow r;
  r.scenario_id = spec.scenario_id;
  r.variant = to_string(spec.variant);
  r.chained = spec.chained;
  r.f = spec.f;
  r.delta = spec.delta;
  r.views = spec.views;
  r.faulty = spec.faulty;
  r.seed = spec.seed;
  r.total_latency_ms = out.result.total_latency_ms;
  r.avg_per_view_ms = out.result.average_per_view_ms;
  r.status = out.status;
  return r;
}

std::vector<ResultRow> run_sweep(const ScenarioSpec& spec, int views_from,
                                 int views_to) {
  if (views_from < 1 || views_to > kMaxViews || views_from > views_to) {
    throw InvalidParameter("views range must be within [1, 10000]");
  }
  const LatencyMatrix m = resolve_topology(spec);
  std::vector<ResultRow> rows;
  for (int views = views_from; views <= views_to; ++views) {
    ScenarioSpec s = spec;
    s.views = views;
    s.scenario_id = spec.scenario_id + "-views" + std::to_string(views);
    rows.push_back(to_result_row(s, run_scenario(s, m)));
  }
  return rows;
}

double CampaignSummary::better_or_equal_fraction() const {
  return rows.empty()
             ? 0.0
             : static_cast<double>(wins + ties) / static_cast<double>(rows.size());
}

CampaignSummary run_comparison_campaign(const ScenarioSpec& base_spec,
                                        int topologies) {
  if (topologies < 1) throw InvalidParameter("topologies must be >= 1");
  const ProtocolConfig config = make_config(base_spec.f, base_spec.delta);
  const double max_latency = base_spec.random_max_latency > 0.0
                                 ? base_spec.random_max_latency
                                 : 400.0;

  CampaignSummary summary;
  for (int t = 0; t < topologies; ++t) {
    SeededRng topo_rng(derive_seed(base_spec.seed, kCampaignStreamBase + t));
    const LatencyMatrix m =
        generate_random_topology(config.n, max_latency, topo_rng);

    ScenarioSpec best_spec = base_spec;
    best_spec.variant = Variant::BestAssigned;
    best_spec.chained = false;
    best_spec.faulty = true;
    best_spec.scenario_id = "campaign-" + std::to_string(t);
    ScenarioSpec cont_spec = best_spec;
    cont_spec.variant = Variant::Continuous;

    const ScenarioOutcome best = run_scenario(best_spec, m);
    const ScenarioOutcome cont = run_scenario(cont_spec, m);

    CampaignRow row;
    row.topology_index = t;
    row.best_assigned_ms = best.result.total_latency_ms;
    row.continuous_ms = cont.result.total_latency_ms;
    row.difference_ms = row.best_assigned_ms - row.continuous_ms;
    if (std::abs(row.difference_ms) <= kCampaignTieTolMs) {
      row.outcome = "tie";
      ++summary.ties;
    } else if (row.difference_ms > 0.0) {
      row.outcome = "win";
      ++summary.wins;
    } else {
      row.outcome = "loss";
      ++summary.losses;
    }
    summary.rows.push_back(row);
  }
  return summary;
}

}  // namespace whs
