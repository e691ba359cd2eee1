#pragma once

#include <stdexcept>
#include <string>

namespace einhom {

/// Input outside an operation's mathematical domain (bad block size, zero polynomial, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Internal consistency violated: a bracket that does not bracket, coefficient
/// relations that fail. Signals a bug or corrupted input rather than a bad request.
class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The brute-force oracle refuses algebras above its size cap.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace einhom
