#pragma once

#include <set>
#include <vector>

#include "whs/latency_matrix.hpp"
#include "whs/rng.hpp"

namespace whs {

/// The four vote messages the leader awaits, one per quorum event of a view.
enum class MessageKind { NewView, Prepare, PreCommit, Commit };

const char* to_string(MessageKind kind);

/// Payload offsets: new-view messages carry the block proposal, the rest
/// carry just hashes.
inline constexpr double kNewViewOffsetMax = 5.0;
inline constexpr double kVoteOffsetMax = 2.0;

/// Link latency from sender to leader plus a payload offset: U(0, 5) for
/// NewView, U(0, 2) otherwise. Exactly 0 for self-delivery (sender == leader,
/// no draw consumed). static_network disables offsets.
double sample_message_latency(const LatencyMatrix& m, int leader, int sender,
                              MessageKind kind, SeededRng& rng,
                              bool static_network = false);

/// One latency vector for a quorum event: an entry per sender, sampled in
/// replica-index order. Faulty senders are forced to +inf after sampling, so
/// the draw sequence does not depend on the fault set or the weights.
std::vector<double> sample_vote_latencies(const LatencyMatrix& m, int leader,
                                          MessageKind kind,
                                          const std::set<int>& faulty,
                                          SeededRng& rng,
                                          bool static_network = false);

}  // namespace whs
