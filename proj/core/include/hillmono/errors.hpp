#pragma once

#include <stdexcept>
#include <string>

namespace hillmono {

// Bad arguments or inputs outside an operation's domain (rho <= 0, g not in G0, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed or unreadable external input (files, JSON, non-finite samples).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical invariant failed: integration accuracy, bracketing, consistency checks.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Spectral scan ran out of range before reaching the requested eigenvalue index.
class RangeError : public NumericalError {
 public:
  RangeError(const std::string& what, int largest_index)
      : NumericalError(what), largest_index_(largest_index) {}

  int largest_index() const noexcept { return largest_index_; }

 private:
  int largest_index_;
};

}  // namespace hillmono
