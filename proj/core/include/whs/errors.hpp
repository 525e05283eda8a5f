#pragma once

#include <stdexcept>
#include <string>

namespace whs {

/// Base class for all whs errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A topology file or results CSV that does not match its format.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

/// A precondition violation on an operation's arguments.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class IoFailure : public Error {
 public:
  using Error::Error;
};

/// The annealer's initial state could not be evaluated.
class EnergyEvaluationFailed : public Error {
 public:
  using Error::Error;
};

/// The finite-latency senders do not carry enough weight to reach the
/// quorum threshold. view() is >= 0 when raised inside a multi-view run.
class QuorumUnreachable : public Error {
 public:
  explicit QuorumUnreachable(const std::string& msg, int view = -1)
      : Error(msg), view_(view) {}

  int view() const { return view_; }

 private:
  int view_;
};

}  // namespace whs
