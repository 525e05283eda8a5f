#include "whs/quorum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace whs {

double WeightAssignment::total() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

ProtocolConfig make_config(int f, int delta) {
  if (f < 1) throw InvalidParameter("f must be >= 1");
  if (delta < 0) throw InvalidParameter("delta must be >= 0");
  ProtocolConfig c;
  c.f = f;
  c.delta = delta;
  c.n = 3 * f + 1 + delta;
  c.q_v = 2.0 * (f + delta) + 1.0;
  c.v_max = 1.0 + static_cast<double>(delta) / f;
  c.v_min = 1.0;
  return c;
}

WeightAssignment make_equal_baseline(int n) {
  if (n < 4) throw InvalidParameter("baseline needs n >= 4");
  return {std::vector<double>(n, 1.0), WeightScheme::EqualBaseline};
}

WeightAssignment make_discrete_assignment(const ProtocolConfig& config,
                                          const std::set<int>& vmax_positions) {
  if (static_cast<int>(vmax_positions.size()) != 2 * config.f) {
    throw InvalidParameter("expected exactly 2f = " +
                           std::to_string(2 * config.f) + " V_max positions");
  }
  for (int i : vmax_positions) {
    if (i < 0 || i >= config.n) {
      throw InvalidParameter("V_max position out of range: " +
                             std::to_string(i));
    }
  }
  WeightAssignment w{std::vector<double>(config.n, config.v_min),
                     WeightScheme::Discrete};
  for (int i : vmax_positions) w.weights[i] = config.v_max;
  return w;
}

double time_to_form_quorum(const std::vector<double>& latencies,
                           const WeightAssignment& weights, double threshold) {
  const int n = weights.n();
  if (static_cast<int>(latencies.size()) != n) {
    throw InvalidParameter("latency vector length does not match weights");
  }
  if (threshold <= 0.0) throw InvalidParameter("threshold must be > 0");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (latencies[a] != latencies[b]) return latencies[a] < latencies[b];
    return a < b;
  });

  double acc = 0.0;
  for (int i : order) {
    if (!std::isfinite(latencies[i])) break;  // faulty senders never count
    acc += weights.weights[i];
    if (acc >= threshold - kWeightTol) return latencies[i];
  }
  throw QuorumUnreachable("finite-latency weight " + std::to_string(acc) +
                          " below quorum threshold " +
                          std::to_string(threshold));
}

std::set<int> select_faulty(const WeightAssignment& weights, int f) {
  const int n = weights.n();
  if (f < 0 || f >= n) throw InvalidParameter("select_faulty needs 0 <= f < n");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (weights.weights[a] != weights.weights[b])
      return weights.weights[a] > weights.weights[b];
    return a < b;
  });
  return std::set<int>(order.begin(), order.begin() + f);
}

double continuous_quorum_threshold(const WeightAssignment& weights, int f) {
  std::vector<double> sorted = weights.weights;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double heaviest = 0.0;
  for (int i = 0; i < f; ++i) heaviest += sorted[i];
  return weights.total() - heaviest;
}

namespace {

std::vector<int> mask_to_indices(unsigned mask) {
  std::vector<int> idx;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) idx.push_back(i);
  }
  return idx;
}

}  // namespace

QuorumSafetyReport check_continuous_safety(const WeightAssignment& weights,
                                           int f) {
  const int n = weights.n();
  if (n > 10) {
    // Exhaustive enumeration is exponential; anything larger is out of scope.
    throw InvalidParameter("check_continuous_safety supports n <= 10");
  }
  if (f < 1 || f >= n) throw InvalidParameter("need 1 <= f < n");

  QuorumSafetyReport report;
  report.threshold = continuous_quorum_threshold(weights, f);
  if (report.threshold <= kWeightTol) {
    report.valid = false;
    report.availability_deficit = report.threshold;
    return report;
  }

  std::vector<unsigned> quorums;
  const unsigned full = (1u << n) - 1u;
  for (unsigned mask = 1; mask <= full; ++mask) {
    double w = 0.0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) w += weights.weights[i];
    }
    if (w >= report.threshold - kWeightTol) quorums.push_back(mask);
  }

  for (std::size_t a = 0; a < quorums.size(); ++a) {
    for (std::size_t b = a + 1; b < quorums.size(); ++b) {
      if (std::popcount(quorums[a] & quorums[b]) < f + 1) {
        report.valid = false;
        report.overlap_witness = {mask_to_indices(quorums[a]),
                                  mask_to_indices(quorums[b])};
        return report;
      }
    }
  }
  report.valid = true;
  return report;
}

}  // namespace whs
