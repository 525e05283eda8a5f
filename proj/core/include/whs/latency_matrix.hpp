#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "whs/rng.hpp"

namespace whs {

enum class MatrixFormat { Csv, Json };

/// n x n one-way inter-replica link latencies in milliseconds.
///
/// Immutable after construction and safely shareable across concurrent
/// simulations. Invariants enforced at construction: n >= 4, all entries
/// finite and >= 0, diagonal exactly zero. Asymmetric matrices are accepted;
/// faults are modeled downstream and never stored here.
class LatencyMatrix {
 public:
  /// Validates and takes ownership of the entries. labels may be empty or
  /// must have one name per replica. Throws MalformedInput on violation.
  explicit LatencyMatrix(std::vector<std::vector<double>> entries,
                         std::vector<std::string> labels = {});

  int n() const { return n_; }

  /// One-way latency of a message from replica `from` to replica `to`.
  double entry(int from, int to) const {
    return entries_[static_cast<std::size_t>(from) * n_ + to];
  }

  const std::vector<std::string>& labels() const { return labels_; }

  /// Total distance from replica i to all others; the connectivity score
  /// used to rank best/worst connected replicas.
  double row_sum(int i) const;

  bool operator==(const LatencyMatrix&) const = default;

 private:
  int n_ = 0;
  std::vector<double> entries_;
  std::vector<std::string> labels_;
};

/// Parses a matrix from CSV (header row of labels, then one labeled row of n
/// cells per replica) or JSON ({"labels": [...], "matrix": [[...]]}).
/// Blank diagonal cells read as zero. Throws MalformedInput.
LatencyMatrix load_latency_matrix(std::istream& in, MatrixFormat format);

/// Loads from a file, inferring the format from the extension
/// (.json -> Json, anything else -> Csv). Throws IoFailure if unreadable.
LatencyMatrix load_latency_matrix_file(const std::string& path);

/// Writes the matrix so that reloading reproduces it bit-exactly.
void save_latency_matrix(const LatencyMatrix& m, std::ostream& out,
                         MatrixFormat format);

/// Off-diagonal entries drawn independently and uniformly from
/// [0, max_latency); diagonal zero. Deterministic per rng seed.
/// Throws InvalidParameter if n < 4 or max_latency <= 0.
LatencyMatrix generate_random_topology(int n, double max_latency,
                                       SeededRng& rng);

}  // namespace whs
