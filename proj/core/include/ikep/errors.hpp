#pragma once

#include <stdexcept>
#include <string>

namespace ikep {

/// Base class of every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input data failed structural validation (bad vertex ids, duplicate arcs, ...).
struct ValidationError : Error {
  using Error::Error;
};

/// Cycle enumeration emitted more cycles than the configured budget allows.
struct EnumerationOverflowError : Error {
  using Error::Error;
};

/// A search or checker exceeded its node / permutation / size budget.
struct BudgetExceededError : Error {
  using Error::Error;
};

/// An operation was invoked outside its stated precondition.
struct PreconditionError : Error {
  using Error::Error;
};

}  // namespace ikep
