#pragma once

#include <stdexcept>

namespace invwalk {

// Requested instance exceeds the enumerable state space / memory budget of
// the operation. CLI maps this to exit status 3.
class CapacityError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two computations that must agree (closed form vs. elimination, Fourier vs.
// convolution, ...) disagreed. CLI maps this to exit status 4.
class VerificationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace invwalk
