#pragma once

#include <stdexcept>
#include <string>

namespace qcd {

// All library errors derive from std::logic_error: they signal a violated
// precondition (bad argument, point outside a domain or window), never a
// transient runtime failure.

class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Point outside the mathematical domain of a function (e.g. t <= 0 for the
/// heat kernel, t >= T for a conditional expectation).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Derivative or chaos order above the configured cap.
class UnsupportedOrder : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

/// Estimator window does not fit between the evaluation node and the
/// boundary of the grid.
class OutOfWindow : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

/// Smoothing window narrower than two grid steps.
class WindowTooSmall : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Evaluation time inside the near-expiry cutoff (T - eps, T].
class CutoffError : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

/// Payoff or lambda family outside the supported catalog for an operation.
class Unsupported : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace qcd
