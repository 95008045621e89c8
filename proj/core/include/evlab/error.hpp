#pragma once

#include <stdexcept>
#include <string>

namespace evlab {

/// Input outside the domain where an operation is defined.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical procedure failed, or a checked invariant did not hold.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive procedure ran out of refinement budget; carries what it had.
class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& what, double best_estimate, double error_estimate)
        : NumericalError(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_estimate_;
    double error_estimate_;
};

}  // namespace evlab
