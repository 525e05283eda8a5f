#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "whs/anneal.hpp"
#include "whs/latency_matrix.hpp"
#include "whs/scenario.hpp"

using namespace whs;

namespace {

LatencyMatrix fixture() { return load_latency_matrix_file(WHS_FIXTURE_CSV); }

CandidateState discrete_state(int views = 10) {
  return {WeightAssignment{{2, 2, 1, 1, 1}, WeightScheme::Discrete},
          LeaderSchedule::round_robin(5, views), 0.0};
}

std::multiset<double> weight_multiset(const CandidateState& s) {
  return {s.weights.weights.begin(), s.weights.weights.end()};
}

}  // namespace

TEST_CASE("anneal basics") {
  const CandidateState initial = discrete_state();
  const EnergyFn energy = [](const CandidateState& s) {
    // favors V_max at the front
    double e = 0.0;
    for (std::size_t i = 0; i < s.weights.weights.size(); ++i)
      e += s.weights.weights[i] * static_cast<double>(i);
    return e;
  };
  AnnealParams params = default_anneal_params(energy(initial), 17);

  SUBCASE("identity perturbation returns the initial state") {
    const PerturbFn identity = [](const CandidateState& s, SeededRng&) { return s; };
    const CandidateState result = anneal(initial, energy, identity, params);
    CHECK(result.weights.weights == initial.weights.weights);
    CHECK(result.energy == energy(initial));
  }
  SUBCASE("result energy never exceeds the initial energy") {
    const CandidateState result =
        anneal(initial, energy, perturb_discrete_weights, params);
    CHECK(result.energy <= energy(initial));
  }
  SUBCASE("identical seed gives identical result") {
    const CandidateState a = anneal(initial, energy, perturb_discrete_weights, params);
    const CandidateState b = anneal(initial, energy, perturb_discrete_weights, params);
    CHECK(a.weights.weights == b.weights.weights);
    CHECK(a.energy == b.energy);
  }
  SUBCASE("unreachable initial state fails loudly") {
    const EnergyFn bad = [](const CandidateState&) -> double {
      throw QuorumUnreachable("no quorum");
    };
    CHECK_THROWS_AS(anneal(initial, bad, perturb_discrete_weights, params),
                    EnergyEvaluationFailed);
  }
  SUBCASE("parameter validation") {
    AnnealParams broken = params;
    broken.cooling_rate = 1.0;
    CHECK_THROWS_AS(anneal(initial, energy, perturb_discrete_weights, broken),
                    InvalidParameter);
  }
}

TEST_CASE("perturb_discrete_weights swaps one V_max with one V_min") {
  SeededRng rng(5);
  const CandidateState s = discrete_state();
  CandidateState cur = s;
  for (int i = 0; i < 200; ++i) {
    const CandidateState next = perturb_discrete_weights(cur, rng);
    CHECK(weight_multiset(next) == weight_multiset(s));
    int diffs = 0;
    for (int j = 0; j < 5; ++j) {
      if (next.weights.weights[j] != cur.weights.weights[j]) ++diffs;
    }
    CHECK(diffs == 2);
    cur = next;
  }
}

TEST_CASE("perturb_discrete_weights is a no-op on degenerate delta=0 weights") {
  SeededRng rng(5);
  const CandidateState s{WeightAssignment{{1, 1, 1, 1}, WeightScheme::Discrete},
                         LeaderSchedule::round_robin(4, 4), 0.0};
  CHECK(perturb_discrete_weights(s, rng).weights.weights == s.weights.weights);
}

TEST_CASE("perturb_leader_schedule swaps two positions") {
  SeededRng rng(6);
  // 5 views: distinct leaders make every swap observable
  CandidateState cur = discrete_state(5);
  const auto original = cur.schedule.leaders;
  for (int i = 0; i < 200; ++i) {
    const CandidateState next = perturb_leader_schedule(cur, rng);
    auto a = next.schedule.leaders, b = cur.schedule.leaders;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);  // multiset preserved
    int diffs = 0;
    for (std::size_t j = 0; j < original.size(); ++j) {
      if (next.schedule.leaders[j] != cur.schedule.leaders[j]) ++diffs;
    }
    CHECK(diffs == 2);
    cur = next;
  }

  const CandidateState single{discrete_state().weights, LeaderSchedule{{0}}, 0.0};
  CHECK(perturb_leader_schedule(single, rng).schedule.leaders ==
        std::vector<int>{0});
}

TEST_CASE("perturb_combined flips a fair coin per candidate") {
  SeededRng rng(8);
  // 5 views so every schedule slot holds a distinct leader and any swap
  // is observable
  const CandidateState s = discrete_state(5);
  int weight_changes = 0;
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    const CandidateState next = perturb_combined(s, rng);
    const bool weights_changed = next.weights.weights != s.weights.weights;
    const bool schedule_changed = next.schedule.leaders != s.schedule.leaders;
    CHECK(weights_changed != schedule_changed);  // exactly one side moves
    if (weights_changed) ++weight_changes;
  }
  const double fraction = static_cast<double>(weight_changes) / trials;
  CHECK(fraction >= 0.47);
  CHECK(fraction <= 0.53);
}

TEST_CASE("perturb_continuous") {
  const int f = 1;
  SUBCASE("moves at most 0.1 and stays within [0, 2]") {
    SeededRng rng(9);
    CandidateState cur{WeightAssignment{{2, 2, 1, 1, 1}, WeightScheme::Continuous},
                       LeaderSchedule::round_robin(5, 10), 0.0};
    for (int i = 0; i < 500; ++i) {
      const CandidateState next = perturb_continuous(cur, rng, f);
      for (int j = 0; j < 5; ++j) {
        const double d = std::abs(next.weights.weights[j] - cur.weights.weights[j]);
        CHECK(d <= 0.1 + 1e-12);
        CHECK(next.weights.weights[j] >= 0.0);
        CHECK(next.weights.weights[j] <= 2.0);
      }
      CHECK(check_continuous_safety(next.weights, f).valid);
      cur = next;
    }
  }
  SUBCASE("a capped weight can only move down") {
    SeededRng rng(10);
    const CandidateState s{WeightAssignment{{2, 1, 1, 1, 1}, WeightScheme::Continuous},
                           LeaderSchedule::round_robin(5, 10), 0.0};
    for (int i = 0; i < 200; ++i) {
      const CandidateState next = perturb_continuous(s, rng, f);
      CHECK(next.weights.weights[0] <= 2.0);
      CHECK(next.weights.weights[0] >= 1.9 - 1e-12);
    }
  }
  SUBCASE("a long drifting chain never leaves the safe region") {
    SeededRng rng(11);
    CandidateState cur{WeightAssignment{{1, 1, 1, 1, 1}, WeightScheme::Continuous},
                       LeaderSchedule::round_robin(5, 10), 0.0};
    REQUIRE(check_continuous_safety(cur.weights, f).valid);
    for (int i = 0; i < 2000; ++i) {
      cur = perturb_continuous(cur, rng, f);
      CHECK(check_continuous_safety(cur.weights, f).valid);
    }
  }
}

TEST_CASE("annealing finds the global optimum over all C(5,2) placements") {
  const LatencyMatrix m = fixture();
  const ProtocolConfig config = make_config(1, 1);
  const LeaderSchedule rr = LeaderSchedule::round_robin(5, 10);
  const SimOptions opts{true};  // static: deterministic energy

  const EnergyFn energy = [&](const CandidateState& c) {
    SeededRng rng(0);
    return predict_run(m, c.weights, config.q_v, rr, 10, {}, rng, opts)
        .total_latency_ms;
  };

  // exhaustive enumeration over the 10 V_max placements
  double global_min = 1e300;
  for (int a = 0; a < 5; ++a) {
    for (int b = a + 1; b < 5; ++b) {
      const CandidateState s{make_discrete_assignment(config, {a, b}), rr, 0.0};
      global_min = std::min(global_min, energy(s));
    }
  }

  const CandidateState initial{make_discrete_assignment(config, {0, 1}), rr, 0.0};
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const AnnealParams params = default_anneal_params(energy(initial), seed);
    const CandidateState best =
        anneal(initial, energy, perturb_discrete_weights, params);
    if (std::abs(best.energy - global_min) <= 1e-9) ++hits;
  }
  CHECK(hits == 20);
}

TEST_CASE("static-mode leader-rotation annealing yields a flat landscape") {
  // over a multiple of n views each replica leads equally often, so every
  // schedule with the round-robin multiset has identical static latency
  const LatencyMatrix m = fixture();
  const ProtocolConfig config = make_config(1, 1);
  const int views = 15;
  const LeaderSchedule rr = LeaderSchedule::round_robin(5, views);
  const SimOptions opts{true};
  const WeightAssignment w = make_discrete_assignment(config, {0, 1});

  const EnergyFn energy = [&](const CandidateState& c) {
    SeededRng rng(0);
    return predict_run(m, c.weights, config.q_v, c.schedule, views, {}, rng, opts)
        .total_latency_ms;
  };
  const CandidateState initial{w, rr, 0.0};
  const double round_robin_energy = energy(initial);
  const CandidateState best = anneal(
      initial, energy, perturb_leader_schedule, default_anneal_params(round_robin_energy, 3));
  CHECK(best.energy == doctest::Approx(round_robin_energy).epsilon(1e-12));
}
