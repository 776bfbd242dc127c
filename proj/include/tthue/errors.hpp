#pragma once

#include <stdexcept>
#include <string>

namespace tthue {

/// Argument outside the mathematical domain of an operation (log of a
/// non-positive enclosure, n < 3, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Negative power or division where the divisor enclosure contains zero.
struct DivisionByZeroSpan : std::domain_error {
  using std::domain_error::domain_error;
};

struct MismatchedField : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotAUnit : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Precondition of an operation does not hold (e.g. |F(x,y)| != 1).
struct PreconditionFailed : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Exact verification contradicted an identity the code relies on.
struct VerificationFailed : std::logic_error {
  using std::logic_error::logic_error;
};

/// Resource guard of an oracle (e.g. exhaustive scan area) was exceeded.
struct GuardViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Case of a case analysis that is intentionally not implemented.
struct UnsupportedCase : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace tthue
