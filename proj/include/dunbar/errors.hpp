#pragma once

#include <stdexcept>
#include <string>

namespace dunbar {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Well-formed request that the model cannot satisfy.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Initial transmitters exceed the participating fraction (r0 > 1 - i).
class InfeasibleStateError : public InfeasibleError {
 public:
  using InfeasibleError::InfeasibleError;
};

// Target transmitter fraction is never attained (at or above 1 - i, or beta = 0).
class UnreachableLevelError : public InfeasibleError {
 public:
  using InfeasibleError::InfeasibleError;
};

// No agent has trust at or above the cutoff, so nobody can start the spread.
class NoSeedTransmitterError : public InfeasibleError {
 public:
  using InfeasibleError::InfeasibleError;
};

}  // namespace dunbar
