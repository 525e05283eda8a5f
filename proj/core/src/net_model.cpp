#include "whs/net_model.hpp"

#include <limits>

#include "whs/errors.hpp"

namespace whs {

const char* to_string(MessageKind kind) {
  switch (kind) {
    case MessageKind::NewView: return "new-view";
    case MessageKind::Prepare: return "prepare";
    case MessageKind::PreCommit: return "pre-commit";
    case MessageKind::Commit: return "commit";
  }
  return "?";
}

double sample_message_latency(const LatencyMatrix& m, int leader, int sender,
                              MessageKind kind, SeededRng& rng,
                              bool static_network) {
  if (leader < 0 || leader >= m.n() || sender < 0 || sender >= m.n()) {
    throw InvalidParameter("replica index out of range");
  }
  if (sender == leader) return 0.0;  // leader counts its own vote instantly
  double offset = 0.0;
  if (!static_network) {
    double max = kind == MessageKind::NewView ? kNewViewOffsetMax : kVoteOffsetMax;
    offset = rng.uniform(0.0, max);
  }
  return m.entry(sender, leader) + offset;
}

std::vector<double> sample_vote_latencies(const LatencyMatrix& m, int leader,
                                          MessageKind kind,
                                          const std::set<int>& faulty,
                                          SeededRng& rng,
                                          bool static_network) {
  const int n = m.n();
  std::vector<double> latencies(n);
  for (int sender = 0; sender < n; ++sender) {
    double lat = sample_message_latency(m, leader, sender, kind, rng,
                                        static_network);
    latencies[sender] = faulty.count(sender)
                            ? std::numeric_limits<double>::infinity()
                            : lat;
  }
  return latencies;
}

}  // namespace whs
