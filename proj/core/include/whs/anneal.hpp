#pragma once

#include <cstdint>
#include <functional>

#include "whs/quorum.hpp"
#include "whs/rng.hpp"
#include "whs/sim.hpp"

namespace whs {

struct AnnealParams {
  double initial_temperature = 1.0;
  double cooling_rate = 0.99;      // in (0, 1)
  double min_temperature = 1e-3;   // > 0
  int max_evaluations = 5000;      // >= 1
  std::uint64_t seed = 0;
};

/// Default schedule: T0 = 20% of the initial energy (floored away from
/// zero), geometric cooling at 0.99, stop at T0/1000 or 5000 evaluations.
AnnealParams default_anneal_params(double initial_energy, std::uint64_t seed);

struct CandidateState {
  WeightAssignment weights;
  LeaderSchedule schedule;
  double energy = 0.0;
};

using EnergyFn = std::function<double(const CandidateState&)>;
using PerturbFn = std::function<CandidateState(const CandidateState&, SeededRng&)>;

/// Classic annealing loop: accept lower-energy candidates outright, worse
/// ones with probability exp(-dE/T); T decays each step. Candidates whose
/// energy evaluation raises QuorumUnreachable are rejected, not fatal.
/// Returns the best state seen, never the last accepted one, so the result
/// energy never exceeds the initial energy.
/// Throws EnergyEvaluationFailed if the initial state cannot be evaluated.
CandidateState anneal(const CandidateState& initial, const EnergyFn& energy_fn,
                      const PerturbFn& perturb, const AnnealParams& params);

/// Swaps the weights of one uniformly chosen V_max holder and one V_min
/// holder; preserves the weight multiset. No-op when all weights are equal.
CandidateState perturb_discrete_weights(const CandidateState& state,
                                        SeededRng& rng);

/// Swaps two distinct uniformly chosen leader positions; preserves the
/// leader multiset. No-op on schedules shorter than 2.
CandidateState perturb_leader_schedule(const CandidateState& state,
                                       SeededRng& rng);

/// Fair coin per call: heads perturbs the weights, tails the schedule.
CandidateState perturb_combined(const CandidateState& state, SeededRng& rng);

/// Redraws one replica's weight from U(w - 0.1, w + 0.1) clamped to [0, 2].
/// Candidates failing check_continuous_safety leave the state unmodified.
CandidateState perturb_continuous(const CandidateState& state, SeededRng& rng,
                                  int f);

}  // namespace whs
