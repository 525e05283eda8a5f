#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "whs/errors.hpp"

namespace whs {

/// Absolute tolerance for weight comparisons (continuous weights are reals).
inline constexpr double kWeightTol = 1e-9;

/// Derived parameters of a weighted-quorum BFT system:
///   n     = 3f + 1 + delta
///   q_v   = 2(f + delta) + 1
///   v_max = 1 + delta / f,  v_min = 1
struct ProtocolConfig {
  int f = 1;
  int delta = 0;
  int n = 4;
  double v_max = 1.0;
  double v_min = 1.0;
  double q_v = 3.0;
};

/// Throws InvalidParameter if f < 1 or delta < 0.
ProtocolConfig make_config(int f, int delta);

enum class WeightScheme { Discrete, Continuous, EqualBaseline };

/// Per-replica voting powers. Discrete: exactly 2f entries at v_max, the
/// rest at v_min. EqualBaseline: all ones. Continuous: reals in [0, 2] that
/// pass check_continuous_safety.
struct WeightAssignment {
  std::vector<double> weights;
  WeightScheme scheme = WeightScheme::EqualBaseline;

  int n() const { return static_cast<int>(weights.size()); }
  double total() const;
};

WeightAssignment make_equal_baseline(int n);

/// Throws InvalidParameter unless vmax_positions holds exactly 2f distinct
/// in-range indices.
WeightAssignment make_discrete_assignment(const ProtocolConfig& config,
                                          const std::set<int>& vmax_positions);

/// Latency of the message that completes the weighted quorum: senders sorted
/// by (latency, index), weights accumulated in that order until the running
/// sum reaches threshold. Senders with +inf latency never count.
/// Throws QuorumUnreachable when the finite-latency weight is insufficient.
double time_to_form_quorum(const std::vector<double>& latencies,
                           const WeightAssignment& weights, double threshold);

/// The f replicas with the largest voting power; ties broken by lowest index.
std::set<int> select_faulty(const WeightAssignment& weights, int f);

/// Availability bound for a continuous scheme: total weight minus the sum of
/// the f largest weights.
double continuous_quorum_threshold(const WeightAssignment& weights, int f);

struct QuorumSafetyReport {
  bool valid = false;
  double threshold = 0.0;
  /// Set when the availability bound is non-positive (no quorum survives the
  /// f heaviest failures); holds the non-positive threshold.
  std::optional<double> availability_deficit;
  /// Set on a consistency violation: the first pair of quorums (ascending
  /// bitmask order) overlapping in fewer than f + 1 replicas.
  std::optional<std::pair<std::vector<int>, std::vector<int>>> overlap_witness;
};

/// Verifies availability and f+1-replica consistency by exhaustive subset
/// enumeration. Exponential in n; supported for n <= 10 only
/// (throws InvalidParameter above that).
QuorumSafetyReport check_continuous_safety(const WeightAssignment& weights,
                                           int f);

}  // namespace whs
