#pragma once

#include <stdexcept>
#include <string>

namespace qpricing {

/// Malformed data: bad instances, dimension mismatches, invalid generator
/// configs. The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation was called outside its contract (wrong scheme for the demand
/// class, size cap exceeded, non-convergent separation). CLI exit code 3.
class ContractError : public std::runtime_error {
 public:
  explicit ContractError(const std::string& what) : std::runtime_error(what) {}
};

/// A cut-graph demand with no finite s-t cut: the fundamental price of the
/// demanded query is undefined for every price vector.
class UndeterminableDemandError : public ValidationError {
 public:
  explicit UndeterminableDemandError(const std::string& what) : ValidationError(what) {}
};

/// Filesystem trouble: unreadable inputs, unwritable outputs. CLI exit code 4.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qpricing
