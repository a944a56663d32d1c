#pragma once

#include <stdexcept>
#include <string>

namespace apal {

// Caller violated a documented precondition (bad length, even N, out-of-range index).
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// Requested problem does not fit the explicit enumeration limit.
class CapacityError : public std::length_error {
 public:
  explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

// An internal invariant was broken, e.g. the version space became empty.
class ConsistencyError : public std::logic_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace apal
