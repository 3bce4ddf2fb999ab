#pragma once

#include <stdexcept>
#include <string>

namespace kacfusion {

/// Malformed input: bad type string, inconsistent level data, wrong lattice.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation would exceed a configured size bound (Weyl group order,
/// number of admissible labels).
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical evaluation could not be carried out reliably (point too close
/// to a pole, extrapolation not converging, vanishing Verlinde denominator).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An algorithm reached a state its invariants exclude. Indicates a bug.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace kacfusion
