#include "whs/anneal.hpp"

#include <algorithm>
#include <cmath>

#include "whs/errors.hpp"

namespace whs {

AnnealParams default_anneal_params(double initial_energy, std::uint64_t seed) {
  AnnealParams p;
  p.initial_temperature = std::max(0.2 * initial_energy, 1e-6);
  p.cooling_rate = 0.99;
  p.min_temperature = 1e-3 * p.initial_temperature;
  p.max_evaluations = 5000;
  p.seed = seed;
  return p;
}

CandidateState anneal(const CandidateState& initial, const EnergyFn& energy_fn,
                      const PerturbFn& perturb, const AnnealParams& params) {
  if (params.cooling_rate <= 0.0 || params.cooling_rate >= 1.0) {
    throw InvalidParameter("cooling_rate must be in (0, 1)");
  }
  if (params.min_temperature <= 0.0) {
    throw InvalidParameter("min_temperature must be > 0");
  }
  if (params.max_evaluations < 1) {
    throw InvalidParameter("max_evaluations must be >= 1");
  }

  SeededRng rng(params.seed);
  CandidateState current = initial;
  try {
    current.energy = energy_fn(current);
  } catch (const QuorumUnreachable& e) {
    throw EnergyEvaluationFailed(std::string("initial state: ") + e.what());
  }
  if (!std::isfinite(current.energy)) {
    throw EnergyEvaluationFailed("initial state has non-finite energy");
  }

  CandidateState best = current;
  double temperature = params.initial_temperature;
  for (int evals = 0;
       temperature >= params.min_temperature && evals < params.max_evaluations;
       ++evals, temperature *= params.cooling_rate) {
    CandidateState candidate = perturb(current, rng);
    try {
      candidate.energy = energy_fn(candidate);
    } catch (const QuorumUnreachable&) {
      continue;  // infeasible candidate, rejected
    }
    const double delta = candidate.energy - current.energy;
    if (delta <= 0.0 || rng.uniform01() < std::exp(-delta / temperature)) {
      current = std::move(candidate);
      if (current.energy < best.energy) best = current;
    }
  }
  return best;
}

CandidateState perturb_discrete_weights(const CandidateState& state,
                                        SeededRng& rng) {
  const auto& w = state.weights.weights;
  const double wmax = *std::max_element(w.begin(), w.end());
  const double wmin = *std::min_element(w.begin(), w.end());
  if (wmax - wmin <= kWeightTol) return state;  // degenerate, e.g. delta = 0

  std::vector<int> holders, others;
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    (w[i] >= wmax - kWeightTol ? holders : others).push_back(i);
  }
  const int from = holders[rng.pick(holders.size())];
  const int to = others[rng.pick(others.size())];
  CandidateState next = state;
  std::swap(next.weights.weights[from], next.weights.weights[to]);
  return next;
}

CandidateState perturb_leader_schedule(const CandidateState& state,
                                       SeededRng& rng) {
  const std::size_t len = state.schedule.leaders.size();
  if (len < 2) return state;
  const std::size_t a = rng.pick(len);
  std::size_t b = rng.pick(len - 1);
  if (b >= a) ++b;
  CandidateState next = state;
  std::swap(next.schedule.leaders[a], next.schedule.leaders[b]);
  return next;
}

CandidateState perturb_combined(const CandidateState& state, SeededRng& rng) {
  return rng.coin() ? perturb_discrete_weights(state, rng)
                    : perturb_leader_schedule(state, rng);
}

CandidateState perturb_continuous(const CandidateState& state, SeededRng& rng,
                                  int f) {
  constexpr double kPerturbationStep = 0.1;
  const int n = state.weights.n();
  const int idx = static_cast<int>(rng.pick(n));
  const double w = state.weights.weights[idx];
  const double drawn =
      rng.uniform(w - kPerturbationStep, w + kPerturbationStep);
  CandidateState next = state;
  next.weights.scheme = WeightScheme::Continuous;
  next.weights.weights[idx] = std::clamp(drawn, 0.0, 2.0);
  if (!check_continuous_safety(next.weights, f).valid) {
    return state;  // unsafe candidate, state remains unmodified
  }
  return next;
}

}  // namespace whs
