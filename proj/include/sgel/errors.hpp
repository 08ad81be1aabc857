#pragma once

#include <stdexcept>
#include <string>

namespace sgel {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed cycle notation, group spec, or series text.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Group order or subgroup count above the configured cap.
class CapExceeded : public Error {
public:
  using Error::Error;
};

class NotSolvable : public Error {
public:
  NotSolvable() : Error("group is not solvable") {}
};

/// A caller-supplied argument violates a precondition (incomparable
/// interval endpoints, an invalid chief series, unknown catalog name).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// Raised when a structural fact the labeling relies on fails to hold.
/// Seeing one of these means the input broke a precondition or the
/// implementation has a bug; it is never an expected outcome.
class ConsistencyError : public Error {
public:
  enum class Kind { no_separation, multiple_separation, product_not_subgroup, not_a_cover };

  ConsistencyError(Kind kind, const std::string &what) : Error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

} // namespace sgel
