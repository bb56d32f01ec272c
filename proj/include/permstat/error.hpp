#pragma once

#include <stdexcept>
#include <string>

namespace permstat {

// Malformed input: bad permutation words, pattern strings, unknown names.
// The CLI maps these to exit status 1.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Well-formed input outside an operation's domain: membership failures,
// enumeration guards, closed-form preconditions. The CLI maps these to
// exit status 2. `witness()` carries a reproducible counterexample when one
// exists (an occurrence tuple, a permutation, a predicted count).
class DomainError : public std::domain_error {
 public:
  DomainError(const std::string& what, std::string witness = {})
      : std::domain_error(what), witness_(std::move(witness)) {}

  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

// Arithmetic overflow in exact coefficient arithmetic.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace permstat
