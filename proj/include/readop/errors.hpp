#ifndef READOP_ERRORS_HPP
#define READOP_ERRORS_HPP

#include <stdexcept>

namespace readop {

/// Malformed or structurally invalid configuration (bad growth sequence,
/// unparsable input). Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An index or window size reaches past what the configured sequence defines.
class WindowError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A mathematical precondition of an operation is not met (for example the
/// modulus m does not divide the sequence). Suites report these as refused.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace readop

#endif  // READOP_ERRORS_HPP
