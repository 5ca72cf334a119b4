#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cegen {

/// Base class for every exception thrown by the core library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation's precondition was not met by its arguments.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// An assignment was missing a cause or carried an unknown key.
class AssignmentError : public ContractError {
 public:
  using ContractError::ContractError;
};

/// A CegSpec has more causes than the enumeration limit allows.
class CapacityError : public Error {
 public:
  CapacityError(std::size_t cause_count, std::size_t limit)
      : Error("spec declares " + std::to_string(cause_count) +
              " causes; enumeration limit is " + std::to_string(limit) +
              " (raise it with --max-causes or CEGEN_MAX_CAUSES)"),
        cause_count_(cause_count),
        limit_(limit) {}

  std::size_t cause_count() const noexcept { return cause_count_; }
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t cause_count_;
  std::size_t limit_;
};

}  // namespace cegen
